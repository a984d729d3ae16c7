#include "hardyliou/simd/kernels.hpp"

namespace hardyliou::simd {
namespace {

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {y[i].real() + alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
            y[i].imag() + alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
  }
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_a) {
  const double s = conj_a ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = s * a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void horner(const cplx* coeffs, std::size_t ncoeffs, const cplx* points, cplx* out,
            std::size_t npoints) {
  for (std::size_t j = 0; j < npoints; ++j) {
    cplx acc{0.0, 0.0};
    const cplx z = points[j];
    for (std::size_t k = ncoeffs; k-- > 0;) acc = acc * z + coeffs[k];
    out[j] = acc;
  }
}

void power_moments(const cplx* weights, const cplx* points, std::size_t npoints, cplx* moments,
                   std::size_t nmoments) {
  for (std::size_t n = 0; n < nmoments; ++n) moments[n] = {0.0, 0.0};
  for (std::size_t k = 0; k < npoints; ++k) {
    cplx p = weights[k];
    const cplx z = points[k];
    for (std::size_t n = 0; n < nmoments; ++n) {
      moments[n] += p;
      p *= z;
    }
  }
}

}  // namespace

namespace detail {
const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, dot_conj, axpy, mul, horner, power_moments};
  return table;
}
}  // namespace detail

}  // namespace hardyliou::simd

#pragma once

// Complex double inner loops shared by the series, boundary and occupation
// code. Every kernel has a scalar reference implementation; wider variants
// are selected once at runtime and must agree with the reference to rounding.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace hardyliou::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // sum_i a[i] * conj(b[i])
  cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  // out[i] = (conj_a ? conj(a[i]) : a[i]) * b[i]; out may alias a or b
  void (*mul)(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_a);

  // out[j] = sum_k coeffs[k] * points[j]^k   (Horner, vectorised over points)
  void (*horner)(const cplx* coeffs, std::size_t ncoeffs, const cplx* points, cplx* out,
                 std::size_t npoints);

  // moments[n] = sum_k weights[k] * points[k]^n  for n < nmoments
  void (*power_moments)(const cplx* weights, const cplx* points, std::size_t npoints,
                        cplx* moments, std::size_t nmoments);
};

/// Table chosen at first use: the widest ISA the CPU supports, unless
/// HARDYLIOU_SIMD=scalar|avx2 forces one (an unsupported request falls back to scalar).
const KernelTable& active();

/// Table for a specific ISA, or nullptr when it is not compiled in or not
/// supported by this CPU. Used by the equivalence tests.
const KernelTable* table_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

namespace detail {
const KernelTable& scalar_table();
#if defined(HARDYLIOU_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace hardyliou::simd

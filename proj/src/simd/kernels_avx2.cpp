// AVX2 + FMA variants. Two complex doubles per __m256d, interleaved (re, im).

#include <immintrin.h>

#include <vector>

#include "hardyliou/simd/kernels.hpp"

namespace hardyliou::simd {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d broadcast(cplx c) { return _mm256_set_pd(c.imag(), c.real(), c.imag(), c.real()); }

inline __m256d conj2(__m256d v) { return _mm256_xor_pd(v, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0)); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swapped = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swapped));
}

inline cplx hsum(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), conj2(load2(b + i))));
    acc1 = _mm256_add_pd(acc1, cmul(load2(a + i + 2), conj2(load2(b + i + 2))));
  }
  for (; i + 2 <= n; i += 2) acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), conj2(load2(b + i))));
  cplx sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * std::conj(b[i]);
  return sum;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d av = broadcast(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(av, load2(x + i))));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_a) {
  std::size_t i = 0;
  if (conj_a) {
    for (; i + 2 <= n; i += 2) store2(out + i, cmul(conj2(load2(a + i)), load2(b + i)));
    for (; i < n; ++i) out[i] = std::conj(a[i]) * b[i];
  } else {
    for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(a + i), load2(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
  }
}

void horner(const cplx* coeffs, std::size_t ncoeffs, const cplx* points, cplx* out,
            std::size_t npoints) {
  if (ncoeffs == 0) {
    for (std::size_t j = 0; j < npoints; ++j) out[j] = {0.0, 0.0};
    return;
  }
  std::size_t j = 0;
  for (; j + 4 <= npoints; j += 4) {
    const __m256d z0 = load2(points + j);
    const __m256d z1 = load2(points + j + 2);
    __m256d acc0 = broadcast(coeffs[ncoeffs - 1]);
    __m256d acc1 = acc0;
    for (std::size_t k = ncoeffs - 1; k-- > 0;) {
      const __m256d c = broadcast(coeffs[k]);
      acc0 = _mm256_add_pd(cmul(acc0, z0), c);
      acc1 = _mm256_add_pd(cmul(acc1, z1), c);
    }
    store2(out + j, acc0);
    store2(out + j + 2, acc1);
  }
  for (; j + 2 <= npoints; j += 2) {
    const __m256d z = load2(points + j);
    __m256d acc = broadcast(coeffs[ncoeffs - 1]);
    for (std::size_t k = ncoeffs - 1; k-- > 0;) acc = _mm256_add_pd(cmul(acc, z), broadcast(coeffs[k]));
    store2(out + j, acc);
  }
  for (; j < npoints; ++j) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = ncoeffs; k-- > 0;) acc = acc * points[j] + coeffs[k];
    out[j] = acc;
  }
}

void power_moments(const cplx* weights, const cplx* points, std::size_t npoints, cplx* moments,
                   std::size_t nmoments) {
  // Accumulators stored as plain doubles, four per moment.
  std::vector<double> acc(4 * nmoments, 0.0);
  std::size_t k = 0;
  for (; k + 2 <= npoints; k += 2) {
    __m256d p = load2(weights + k);
    const __m256d z = load2(points + k);
    for (std::size_t n = 0; n < nmoments; ++n) {
      double* slot = acc.data() + 4 * n;
      _mm256_storeu_pd(slot, _mm256_add_pd(_mm256_loadu_pd(slot), p));
      p = cmul(p, z);
    }
  }
  for (std::size_t n = 0; n < nmoments; ++n) moments[n] = hsum(_mm256_loadu_pd(acc.data() + 4 * n));
  for (; k < npoints; ++k) {
    cplx p = weights[k];
    for (std::size_t n = 0; n < nmoments; ++n) {
      moments[n] += p;
      p *= points[k];
    }
  }
}

}  // namespace

namespace detail {
const KernelTable& avx2_table() {
  static const KernelTable table{Isa::Avx2, dot_conj, axpy, mul, horner, power_moments};
  return table;
}
}  // namespace detail

}  // namespace hardyliou::simd

#include "hardyliou/series.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hardyliou/error.hpp"
#include "hardyliou/simd/kernels.hpp"

namespace hardyliou {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw Error(ErrorKind::InvalidSpec,
                  std::string(what) + " has a non-finite entry at index " + std::to_string(i));
    }
  }
}

void require_disk(Complex w) {
  if (!(std::abs(w) < 1.0)) {
    throw Error(ErrorKind::Domain, "kernel point |w| = " + std::to_string(std::abs(w)) +
                                       " is not inside the unit disk");
  }
}

void require_alias_free(std::size_t M, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  if (M < 2 * static_cast<std::size_t>(N) + 2) {
    throw Error(ErrorKind::Aliasing, "boundary grid of " + std::to_string(M) +
                                         " samples is too coarse for order " + std::to_string(N) +
                                         " (need >= " + std::to_string(2 * N + 2) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TaylorPolynomial

TaylorPolynomial::TaylorPolynomial() : coeffs_(1, Complex{}) {}

TaylorPolynomial::TaylorPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidSpec, "Taylor polynomial needs c_0");
  require_finite(coeffs_, "Taylor polynomial");
}

TaylorPolynomial TaylorPolynomial::zero(int order) {
  if (order < 0) throw Error(ErrorKind::InvalidSpec, "negative order");
  return TaylorPolynomial(std::vector<Complex>(order + 1));
}

TaylorPolynomial TaylorPolynomial::constant(Complex c) { return TaylorPolynomial({c}); }

TaylorPolynomial TaylorPolynomial::monomial(int n, Complex c) {
  std::vector<Complex> v(n + 1);
  v[n] = c;
  return TaylorPolynomial(std::move(v));
}

Complex TaylorPolynomial::operator()(Complex z) const {
  Complex acc{};
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

Complex TaylorPolynomial::derivative_at(Complex z, int j) const {
  // sum_n n!/(n-j)! c_n z^{n-j}
  Complex acc{};
  for (std::size_t n = coeffs_.size(); n-- > static_cast<std::size_t>(j);) {
    double falling = 1.0;
    for (int i = 0; i < j; ++i) falling *= static_cast<double>(n - i);
    acc = acc * z + falling * coeffs_[n];
  }
  return acc;
}

double TaylorPolynomial::norm_sq() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

double TaylorPolynomial::norm() const { return std::sqrt(norm_sq()); }

TaylorPolynomial TaylorPolynomial::truncated(int order) const {
  if (order < 0) throw Error(ErrorKind::InvalidSpec, "negative order");
  std::vector<Complex> v(order + 1);
  std::copy_n(coeffs_.begin(), std::min(v.size(), coeffs_.size()), v.begin());
  return TaylorPolynomial(std::move(v));
}

int TaylorPolynomial::degree() const noexcept {
  for (std::size_t n = coeffs_.size(); n-- > 1;)
    if (coeffs_[n] != Complex{}) return static_cast<int>(n);
  return 0;
}

TaylorPolynomial operator+(const TaylorPolynomial& a, const TaylorPolynomial& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = a[n] + b[n];
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial operator-(const TaylorPolynomial& a, const TaylorPolynomial& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = a[n] - b[n];
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial operator*(Complex s, const TaylorPolynomial& a) {
  std::vector<Complex> v(a.coeffs_);
  for (auto& c : v) c *= s;
  return TaylorPolynomial(std::move(v));
}

// ---------------------------------------------------------------------------
// BoundaryGrid

BoundaryGrid::BoundaryGrid(std::vector<Complex> values) : values_(std::move(values)) {
  require_finite(values_, "boundary grid");
}

double BoundaryGrid::angle(std::size_t m, std::size_t M) {
  return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M);
}

std::vector<Complex> BoundaryGrid::nodes(std::size_t M) {
  std::vector<Complex> z(M);
  for (std::size_t m = 0; m < M; ++m) z[m] = std::polar(1.0, angle(m, M));
  return z;
}

double BoundaryGrid::max_abs() const {
  double v = 0.0;
  for (const auto& c : values_) v = std::max(v, std::abs(c));
  return v;
}

double BoundaryGrid::min_abs() const {
  double v = values_.empty() ? 0.0 : std::abs(values_.front());
  for (const auto& c : values_) v = std::min(v, std::abs(c));
  return v;
}

BoundaryGrid pointwise(const BoundaryGrid& a, const BoundaryGrid& b, bool conj_a) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidSpec, "boundary grids differ in size");
  std::vector<Complex> out(a.size());
  simd::active().mul(a.values().data(), b.values().data(), out.data(), out.size(), conj_a);
  return BoundaryGrid(std::move(out));
}

BoundaryGrid operator-(const BoundaryGrid& a, const BoundaryGrid& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidSpec, "boundary grids differ in size");
  std::vector<Complex> out(a.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = a[m] - b[m];
  return BoundaryGrid(std::move(out));
}

// ---------------------------------------------------------------------------
// Kernels and inner products

Complex inner_product(const TaylorPolynomial& g, const TaylorPolynomial& h) {
  const auto n = static_cast<std::size_t>(std::min(g.order(), h.order()) + 1);
  return simd::active().dot_conj(g.coeffs().data(), h.coeffs().data(), n);
}

TaylorPolynomial kernel(const KernelSpec& spec, int N) {
  require_disk(spec.point);
  if (spec.order < 0) throw Error(ErrorKind::InvalidSpec, "derivative order must be >= 0");
  if (spec.normalized && spec.order > 0)
    throw Error(ErrorKind::InvalidSpec, "only the Szego kernel (order 0) can be normalized");
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");

  const int j = spec.order;
  const Complex wbar = std::conj(spec.point);
  std::vector<Complex> v(N + 1);
  if (j <= N) {
    double jfact = 1.0;
    for (int i = 2; i <= j; ++i) jfact *= i;
    Complex c = jfact;  // n = j term: j! wbar^0
    for (int n = j; n <= N; ++n) {
      v[n] = c;
      c *= wbar * (static_cast<double>(n + 1) / static_cast<double>(n + 1 - j));
    }
  }
  if (spec.normalized) {
    const double s = std::sqrt(1.0 - std::norm(spec.point));
    for (auto& c : v) c *= s;
  }
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial szego_kernel(Complex w, int N) { return kernel({w, 0, false}, N); }

K1Kernel k1_kernel(Complex w, int N) {
  require_disk(w);
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  std::vector<Complex> v(N + 1);
  const Complex wbar = std::conj(w);
  Complex p = 1.0;  // wbar^{n-1}
  for (int n = 1; n <= N; ++n) {
    v[n] = static_cast<double>(n) * p;
    p *= wbar;
  }
  const double r2 = std::norm(w);
  return {TaylorPolynomial(std::move(v)), (1.0 + r2) / std::pow(1.0 - r2, 3)};
}

// ---------------------------------------------------------------------------
// Series algebra

TaylorPolynomial antiderivative(const TaylorPolynomial& h) {
  std::vector<Complex> v(h.order() + 2);
  for (int n = 0; n <= h.order(); ++n) v[n + 1] = h[n] / static_cast<double>(n + 1);
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial multiply(const TaylorPolynomial& a, const TaylorPolynomial& b, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  std::vector<Complex> v(N + 1);
  const auto& k = simd::active();
  const int top = std::min(a.order(), N);
  for (int i = 0; i <= top; ++i) {
    if (a[i] == Complex{}) continue;
    const int len = std::min(b.order(), N - i) + 1;
    k.axpy(a[i], b.coeffs().data(), v.data() + i, static_cast<std::size_t>(len));
  }
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial reciprocal(const TaylorPolynomial& a, int N) {
  if (a[0] == Complex{})
    throw Error(ErrorKind::SingularSymbol, "reciprocal of a series with zero constant term");
  std::vector<Complex> r(N + 1);
  const Complex inv0 = 1.0 / a[0];
  r[0] = inv0;
  for (int n = 1; n <= N; ++n) {
    Complex s{};
    for (int k = 1; k <= std::min(n, a.order()); ++k) s += a[k] * r[n - k];
    r[n] = -inv0 * s;
  }
  return TaylorPolynomial(std::move(r));
}

TaylorPolynomial exp(const TaylorPolynomial& a, int N) {
  // g' = a' g  =>  n g_n = sum_{k=1}^{n} k a_k g_{n-k}
  std::vector<Complex> g(N + 1);
  g[0] = std::exp(a[0]);
  for (int n = 1; n <= N; ++n) {
    Complex s{};
    for (int k = 1; k <= std::min(n, a.order()); ++k) s += static_cast<double>(k) * a[k] * g[n - k];
    g[n] = s / static_cast<double>(n);
  }
  return TaylorPolynomial(std::move(g));
}

TaylorPolynomial derivative(const TaylorPolynomial& a) {
  if (a.order() == 0) return TaylorPolynomial::zero(0);
  std::vector<Complex> v(a.order());
  for (int n = 0; n < a.order(); ++n) v[n] = static_cast<double>(n + 1) * a[n + 1];
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial compose(const TaylorPolynomial& a, const TaylorPolynomial& b, int N) {
  TaylorPolynomial acc = TaylorPolynomial::constant(a[a.order()]).truncated(N);
  for (int k = a.order(); k-- > 0;) {
    acc = multiply(acc, b, N) + TaylorPolynomial::constant(a[k]);
  }
  return acc.truncated(N);
}

std::vector<Complex> evaluate(const TaylorPolynomial& g, std::span<const Complex> points) {
  std::vector<Complex> out(points.size());
  simd::active().horner(g.coeffs().data(), g.coeffs().size(), points.data(), out.data(),
                        points.size());
  return out;
}

// ---------------------------------------------------------------------------
// Boundary transforms

std::size_t default_boundary_samples(int N) {
  std::size_t M = 1;
  while (M < 4 * static_cast<std::size_t>(N + 1)) M <<= 1;
  return M;
}

BoundaryGrid to_boundary(const TaylorPolynomial& g, std::size_t M) {
  require_alias_free(M, g.order());
  std::vector<Complex> spectrum(M), values;
  std::copy(g.coeffs().begin(), g.coeffs().end(), spectrum.begin());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(values, spectrum);
  return BoundaryGrid(std::move(values));
}

TaylorPolynomial project_h2(const BoundaryGrid& b, int N) {
  const std::size_t M = b.size();
  require_alias_free(M, N);
  std::vector<Complex> time(b.values().begin(), b.values().end()), spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, time);
  std::vector<Complex> v(N + 1);
  for (int n = 0; n <= N; ++n) v[n] = spectrum[n] / static_cast<double>(M);
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial outer_from_modulus(const BoundaryGrid& modulus, int N) {
  const std::size_t M = modulus.size();
  require_alias_free(M, N);
  std::vector<Complex> logs(M);
  for (std::size_t m = 0; m < M; ++m) {
    const Complex v = modulus[m];
    if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-12 * std::abs(v.real())) {
      throw Error(ErrorKind::LogDomain, "modulus sample " + std::to_string(m) +
                                            " is not a positive real number");
    }
    logs[m] = std::log(v.real());
  }
  // Herglotz integral on the grid: log G = c_0 + 2 sum_{n>=1} c_n z^n with
  // c_n the Fourier coefficients of log m.
  std::vector<Complex> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, logs);
  std::vector<Complex> u(N + 1);
  u[0] = spectrum[0].real() / static_cast<double>(M);
  for (int n = 1; n <= N; ++n) u[n] = 2.0 * spectrum[n] / static_cast<double>(M);
  return exp(TaylorPolynomial(std::move(u)), N);
}

double tail_tolerance(double r, int N, double C) {
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return C * std::pow(r, N + 1) / (1.0 - r);
}

bool within(double error, double atol, double rtol, double scale) {
  return error <= atol + rtol * scale;
}

}  // namespace hardyliou

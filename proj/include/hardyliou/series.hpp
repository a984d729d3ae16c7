#pragma once

// Truncated Hardy-space arithmetic. Functions on the disk are carried by their
// Taylor coefficients c_0..c_N; the monomials are orthonormal, so inner
// products, norms and adjoints are plain coefficient algebra. Boundary values
// live on a uniform grid of the unit circle and are moved back into H^2 by a
// discrete Fourier projection.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hardyliou {

using Complex = std::complex<double>;

class TaylorPolynomial {
 public:
  /// The zero function, order 0.
  TaylorPolynomial();
  /// Takes ownership of c_0..c_N. Throws InvalidSpec on an empty list or a
  /// non-finite entry.
  explicit TaylorPolynomial(std::vector<Complex> coeffs);

  static TaylorPolynomial zero(int order);
  static TaylorPolynomial constant(Complex c);
  /// c z^n
  static TaylorPolynomial monomial(int n, Complex c = 1.0);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  /// Coefficient n; zero past the stored order.
  Complex operator[](std::size_t n) const noexcept {
    return n < coeffs_.size() ? coeffs_[n] : Complex{};
  }

  Complex operator()(Complex z) const;
  /// j-th derivative at z.
  Complex derivative_at(Complex z, int j) const;

  double norm_sq() const;
  double norm() const;

  /// Zero-padded or cut to the given order.
  TaylorPolynomial truncated(int order) const;
  /// Highest index with a nonzero coefficient (0 for the zero function).
  int degree() const noexcept;

  friend TaylorPolynomial operator+(const TaylorPolynomial& a, const TaylorPolynomial& b);
  friend TaylorPolynomial operator-(const TaylorPolynomial& a, const TaylorPolynomial& b);
  friend TaylorPolynomial operator*(Complex s, const TaylorPolynomial& a);
  friend TaylorPolynomial operator-(const TaylorPolynomial& a) { return Complex(-1.0) * a; }

 private:
  std::vector<Complex> coeffs_;
};

/// Samples at theta_m = 2 pi m / M, m = 0..M-1.
class BoundaryGrid {
 public:
  BoundaryGrid() = default;
  explicit BoundaryGrid(std::vector<Complex> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](std::size_t m) const noexcept { return values_[m]; }

  static double angle(std::size_t m, std::size_t M);
  /// e^{i theta_m} for every node of an M-point grid.
  static std::vector<Complex> nodes(std::size_t M);

  double max_abs() const;
  double min_abs() const;

 private:
  std::vector<Complex> values_;
};

/// Pointwise product on a common grid; conj_a conjugates the first factor.
BoundaryGrid pointwise(const BoundaryGrid& a, const BoundaryGrid& b, bool conj_a = false);
BoundaryGrid operator-(const BoundaryGrid& a, const BoundaryGrid& b);

struct KernelSpec {
  Complex point;
  int order = 0;
  bool normalized = false;
};

Complex inner_product(const TaylorPolynomial& g, const TaylorPolynomial& h);

/// d^j/d(conj w)^j of 1/(1 - conj(w) z), truncated at N. j = 0 is the Szego
/// kernel K_w; `normalized` scales K_w by sqrt(1 - |w|^2) and is rejected for j > 0.
TaylorPolynomial kernel(const KernelSpec& spec, int N);
TaylorPolynomial szego_kernel(Complex w, int N);

struct K1Kernel {
  TaylorPolynomial series;  // z / (1 - conj(w) z)^2 truncated at N
  double norm_sq;           // closed form (1 + |w|^2) / (1 - |w|^2)^3
};
K1Kernel k1_kernel(Complex w, int N);

/// Jh(z) = int_0^z h. Order grows by one.
TaylorPolynomial antiderivative(const TaylorPolynomial& h);

TaylorPolynomial multiply(const TaylorPolynomial& a, const TaylorPolynomial& b, int N);
/// 1/a to order N; throws SingularSymbol when a(0) = 0.
TaylorPolynomial reciprocal(const TaylorPolynomial& a, int N);
TaylorPolynomial exp(const TaylorPolynomial& a, int N);
TaylorPolynomial derivative(const TaylorPolynomial& a);
/// Composition a(b(z)) to order N (Horner in the series ring).
TaylorPolynomial compose(const TaylorPolynomial& a, const TaylorPolynomial& b, int N);

std::vector<Complex> evaluate(const TaylorPolynomial& g, std::span<const Complex> points);

/// Smallest power of two >= 4(N+1).
std::size_t default_boundary_samples(int N);

/// Both directions require M >= 2N+2 (Aliasing otherwise).
BoundaryGrid to_boundary(const TaylorPolynomial& g, std::size_t M);
TaylorPolynomial project_h2(const BoundaryGrid& b, int N);

/// Outer function with boundary modulus m, normalised so G(0) > 0. Samples
/// must be real and strictly positive (LogDomain otherwise).
TaylorPolynomial outer_from_modulus(const BoundaryGrid& modulus, int N);

/// C r^{N+1} / (1 - r): geometric tail bound for coefficients bounded by C r^n.
double tail_tolerance(double r, int N, double C = 1.0);

/// atol + rtol * scale comparison used throughout.
bool within(double error, double atol, double rtol = 0.0, double scale = 0.0);

}  // namespace hardyliou

#pragma once

// Eigen-decomposition of truncated operators and the explicit eigenfunctions of
// Liouville operators and their adjoints.
//
// Truncated spectra approximate the operator spectra. They coincide exactly only
// when the truncated matrix is triangular, i.e. for affine symbols f = alpha z + beta.

#include <utility>
#include <vector>

#include "hardyliou/liouville.hpp"
#include "hardyliou/occupation.hpp"

namespace hardyliou {

struct EigenPair {
  Complex value;
  TaylorPolynomial vector;  // unit norm, largest entry real positive
  double residual = 0.0;    // || A v - value v ||
};

/// All N+1 eigenpairs sorted by (real, imag). Throws NonConvergence with a
/// condition report if the Schur iteration fails.
std::vector<EigenPair> eigendecompose(const OperatorMatrix& A);

double eigen_residual(const OperatorMatrix& A, Complex value, const TaylorPolynomial& vector);

struct ZeroFreeCertificate {
  double min_modulus = 0.0;
  int winding_number = 0;
  std::size_t samples = 0;
  bool zero_free() const { return min_modulus > 0.0 && winding_number == 0; }
};

/// Argument principle on an M-point boundary grid (M >= 1024).
ZeroFreeCertificate zero_free_certificate(const TaylorPolynomial& f, std::size_t M = 1024);

/// g = exp(J(lambda / f)), g(0) = 1. Throws SymbolHasZeros if the certificate fails.
TaylorPolynomial exp_eigenfunction(const TaylorPolynomial& f, Complex lambda, int N,
                                   std::size_t M = 1024);

/// H_k(z) = sum_n lambda^n / prod_{j<n}(k + j(m-1)) z^{k + n(m-1)}, an eigenfunction
/// of A_{z^m}^* for every lambda. Needs m >= 2 and 1 <= k <= m-1 (InvalidIndex).
TaylorPolynomial hk_eigenfunction(int m, int k, Complex lambda, int N);

struct ZeroEigenspace {
  TaylorPolynomial symbol;               // prod (z - z_i)^{m_i}
  std::vector<TaylorPolynomial> basis;   // g^[j-1]_{z_i}, j = 1..m_i
  std::vector<double> residuals;         // || A_f^* v || via the matrix adjoint
};

/// Throws Domain for a zero on or outside the unit circle.
ZeroEigenspace zero_eigenspace(const std::vector<std::pair<Complex, int>>& zeros, int N);

struct FlowCheck {
  double max_error = 0.0;       // max_t |phi(gamma(t)) - phi(gamma(0)) e^{lambda t}|
  double eigen_residual = 0.0;  // || A_f phi - lambda phi || at the order of phi
};

FlowCheck flow_check(const TaylorPolynomial& f, const TaylorPolynomial& eigenfunction,
                     Complex lambda, const Trajectory& path);

}  // namespace hardyliou

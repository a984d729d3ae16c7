#pragma once

// Matrices of Liouville-type operators in the monomial basis, their adjoints
// (conjugate transpose and the boundary-integral formula), Smirnov symbol
// decomposition and domain certificates.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "hardyliou/series.hpp"

namespace hardyliou {

enum class OperatorKind { Liouville, Scaled, Weighted };

std::string to_string(OperatorKind kind);

/// (N+1)x(N+1) matrix; column n holds the coefficients of the operator applied
/// to z^n, with rows beyond N dropped.
class OperatorMatrix {
 public:
  OperatorMatrix(Eigen::MatrixXcd entries, OperatorKind kind, bool adjoint = false,
                 std::vector<std::string> warnings = {});

  int order() const noexcept { return static_cast<int>(entries_.rows()) - 1; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  OperatorKind kind() const noexcept { return kind_; }
  bool is_adjoint() const noexcept { return adjoint_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// h is zero-padded or cut to order N first.
  TaylorPolynomial apply(const TaylorPolynomial& h) const;

 private:
  Eigen::MatrixXcd entries_;
  OperatorKind kind_;
  bool adjoint_;
  std::vector<std::string> warnings_;
};

Eigen::VectorXcd to_vector(const TaylorPolynomial& g, int N);
TaylorPolynomial from_vector(const Eigen::VectorXcd& v);

/// A_f g = f g'
OperatorMatrix liouville_matrix(const TaylorPolynomial& f, int N);
/// A_{f,a} g = a f g'(a z), built directly: column n = n a^n f z^{n-1}.
OperatorMatrix scaled_liouville_matrix(const TaylorPolynomial& f, double a, int N);
/// A_{f,phi} g = f phi' g'(phi). Warns (does not throw) when |phi(0)| >= 1.
OperatorMatrix weighted_liouville_matrix(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                         int N);

/// Conjugate transpose; the truncated adjoint in the orthonormal monomial basis.
OperatorMatrix adjoint_matrix(const OperatorMatrix& A);

/// A_f^* h = P_{H^2}( conj(f/z) (z h)' - conj(f') h ) evaluated on an M-point
/// boundary grid. Requires M >= 4(N+1) and order(h) <= N.
TaylorPolynomial adjoint_apply_boundary(const TaylorPolynomial& f, const TaylorPolynomial& h,
                                        int N, std::size_t M);

enum class KernelAdjointRule {
  AsPrinted,  // sum_l conj(f^(l)(w)) g^[j-l]_w
  Leibniz,    // sum_l C(j-1, l) conj(f^(l)(w)) g^[j-l]_w
};

/// A_f^* g^[j-1]_w for j >= 1. The Leibniz rule is the one that matches the
/// conjugate-transpose oracle; the two rules coincide for j <= 2.
TaylorPolynomial adjoint_on_derivative_kernel(const TaylorPolynomial& f, Complex w, int j, int N,
                                              KernelAdjointRule rule = KernelAdjointRule::Leibniz);

/// f = b / a with |a|^2 + |b|^2 = 1 on the circle and a outer.
struct SmirnovPair {
  TaylorPolynomial a;
  TaylorPolynomial b;
  bool normalized = false;
  double boundary_defect = 0.0;  // max | |a|^2 + |b|^2 - 1 | on the grid
};

SmirnovPair smirnov_decompose(const BoundaryGrid& f_boundary, int N);

/// Residual ||f g' - b h|| for g = c + J(a h), f = b/a, computed through boundary
/// products. A small value certifies g in D(A_f). Throws SingularSymbol if a(0) = 0.
double domain_membership_check(const TaylorPolynomial& a, const TaylorPolynomial& b,
                               const TaylorPolynomial& h, Complex c);

/// max |A - A^H| entrywise.
double hermitian_defect(const OperatorMatrix& A);

}  // namespace hardyliou

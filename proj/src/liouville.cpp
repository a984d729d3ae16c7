#include "hardyliou/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "hardyliou/error.hpp"
#include "hardyliou/parallel.hpp"

namespace hardyliou {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Liouville: return "liouville";
    case OperatorKind::Scaled: return "scaled";
    case OperatorKind::Weighted: return "weighted";
  }
  return "unknown";
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries, OperatorKind kind, bool adjoint,
                               std::vector<std::string> warnings)
    : entries_(std::move(entries)), kind_(kind), adjoint_(adjoint), warnings_(std::move(warnings)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw Error(ErrorKind::InvalidSpec, "operator matrix must be square and non-empty");
  if (!entries_.allFinite()) throw Error(ErrorKind::InvalidSpec, "operator matrix is not finite");
}

TaylorPolynomial OperatorMatrix::apply(const TaylorPolynomial& h) const {
  return from_vector(entries_ * to_vector(h, order()));
}

Eigen::VectorXcd to_vector(const TaylorPolynomial& g, int N) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
  for (int n = 0; n <= std::min(N, g.order()); ++n) v(n) = g[n];
  return v;
}

TaylorPolynomial from_vector(const Eigen::VectorXcd& v) {
  return TaylorPolynomial(std::vector<Complex>(v.data(), v.data() + v.size()));
}

OperatorMatrix liouville_matrix(const TaylorPolynomial& f, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) {
    for (int k = 0; k <= f.order() && n - 1 + k <= N; ++k) A(n - 1 + k, n) = static_cast<double>(n) * f[k];
  }
  return OperatorMatrix(std::move(A), OperatorKind::Liouville);
}

OperatorMatrix scaled_liouville_matrix(const TaylorPolynomial& f, double a, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  // Same operation order as the weighted construction with phi = a z, so the
  // two agree bit for bit.
  Complex power = 1.0;  // a^{n-1}
  for (int n = 1; n <= N; ++n) {
    for (int k = 0; k <= f.order() && n - 1 + k <= N; ++k)
      A(n - 1 + k, n) = Complex(static_cast<double>(n)) * ((f[k] * a) * power);
    power = power * a;
  }
  return OperatorMatrix(std::move(A), OperatorKind::Scaled);
}

OperatorMatrix weighted_liouville_matrix(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                         int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  std::vector<std::string> warnings;
  if (std::abs(phi[0]) >= 1.0)
    warnings.push_back("|phi(0)| >= 1: composition does not map the disk into itself");

  const TaylorPolynomial weight = multiply(f, derivative(phi), N);  // f phi'
  std::vector<TaylorPolynomial> powers;                             // phi^{n-1}
  powers.reserve(N);
  powers.push_back(TaylorPolynomial::constant(1.0).truncated(N));
  for (int n = 2; n <= N; ++n) powers.push_back(multiply(powers.back(), phi, N));

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    const TaylorPolynomial col = Complex(static_cast<double>(n)) * multiply(weight, powers[i], N);
    for (int m = 0; m <= N; ++m) A(m, n) = col[m];
  });
  return OperatorMatrix(std::move(A), OperatorKind::Weighted, false, std::move(warnings));
}

OperatorMatrix adjoint_matrix(const OperatorMatrix& A) {
  return OperatorMatrix(A.entries().adjoint(), A.kind(), !A.is_adjoint(), A.warnings());
}

TaylorPolynomial adjoint_apply_boundary(const TaylorPolynomial& f, const TaylorPolynomial& h,
                                        int N, std::size_t M) {
  if (h.order() > N) throw Error(ErrorKind::InvalidSpec, "h must have order <= N");
  const std::size_t needed = std::max<std::size_t>(4 * static_cast<std::size_t>(N + 1),
                                                   static_cast<std::size_t>(N + f.order() + 1));
  if (M < needed) {
    throw Error(ErrorKind::Aliasing, "adjoint formula needs at least " + std::to_string(needed) +
                                         " boundary samples, got " + std::to_string(M));
  }
  // conj(f(z)/z) = conj(f(z)) z on |z| = 1
  const BoundaryGrid nodes(BoundaryGrid::nodes(M));
  const BoundaryGrid conj_f_over_z = pointwise(to_boundary(f, M), nodes, true);

  std::vector<Complex> zh_prime(h.order() + 1);
  for (int n = 0; n <= h.order(); ++n) zh_prime[n] = static_cast<double>(n + 1) * h[n];
  const BoundaryGrid first = pointwise(conj_f_over_z, to_boundary(TaylorPolynomial(zh_prime), M));
  const BoundaryGrid second = pointwise(to_boundary(derivative(f), M), to_boundary(h, M), true);
  return project_h2(first - second, N);
}

TaylorPolynomial adjoint_on_derivative_kernel(const TaylorPolynomial& f, Complex w, int j, int N,
                                              KernelAdjointRule rule) {
  if (j < 1) throw Error(ErrorKind::InvalidIndex, "derivative-kernel index j must be >= 1");
  TaylorPolynomial out = TaylorPolynomial::zero(N);
  double binom = 1.0;  // C(j-1, l)
  for (int l = 0; l <= j - 1; ++l) {
    const double weight = rule == KernelAdjointRule::Leibniz ? binom : 1.0;
    const Complex coeff = weight * std::conj(f.derivative_at(w, l));
    if (coeff != Complex{}) out = out + coeff * kernel({w, j - l, false}, N);
    binom = binom * static_cast<double>(j - 1 - l) / static_cast<double>(l + 1);
  }
  return out;
}

SmirnovPair smirnov_decompose(const BoundaryGrid& f_boundary, int N) {
  const std::size_t M = f_boundary.size();
  std::vector<Complex> modulus(M);
  for (std::size_t m = 0; m < M; ++m) modulus[m] = 1.0 / std::sqrt(1.0 + std::norm(f_boundary[m]));

  SmirnovPair pair{outer_from_modulus(BoundaryGrid(std::move(modulus)), N), TaylorPolynomial()};
  const BoundaryGrid a_boundary = to_boundary(pair.a, M);
  pair.b = project_h2(pointwise(f_boundary, a_boundary), N);

  const BoundaryGrid b_boundary = to_boundary(pair.b, M);
  double defect = 0.0;
  for (std::size_t m = 0; m < M; ++m)
    defect = std::max(defect, std::abs(std::norm(a_boundary[m]) + std::norm(b_boundary[m]) - 1.0));
  pair.boundary_defect = defect;
  pair.normalized = defect <= 1e-10;
  return pair;
}

double domain_membership_check(const TaylorPolynomial& a, const TaylorPolynomial& b,
                               const TaylorPolynomial& h, Complex c) {
  if (a[0] == Complex{})
    throw Error(ErrorKind::SingularSymbol, "a(0) = 0: f = b/a has no series at the origin");
  const int N = std::max(a.order(), b.order()) + h.order();
  const TaylorPolynomial f = multiply(b, reciprocal(a, N), N);
  const TaylorPolynomial g = TaylorPolynomial::constant(c) + antiderivative(multiply(a, h, N));
  const TaylorPolynomial g_prime = derivative(g).truncated(N);

  const std::size_t M = default_boundary_samples(N);
  const TaylorPolynomial lhs = project_h2(pointwise(to_boundary(f, M), to_boundary(g_prime, M)), N);
  return (lhs - multiply(b, h, N)).norm();
}

double hermitian_defect(const OperatorMatrix& A) {
  return (A.entries() - A.entries().adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace hardyliou

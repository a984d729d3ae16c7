#include "hardyliou/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardyliou/error.hpp"

namespace hardyliou {

double eigen_residual(const OperatorMatrix& A, Complex value, const TaylorPolynomial& vector) {
  const Eigen::VectorXcd v = to_vector(vector, A.order());
  return (A.entries() * v - value * v).norm();
}

std::vector<EigenPair> eigendecompose(const OperatorMatrix& A) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A.entries(), true);
  if (solver.info() != Eigen::Success) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.entries());
    const auto& s = svd.singularValues();
    std::ostringstream msg;
    msg << "eigenvalue iteration did not converge (order " << A.order() << ", sigma_max "
        << s(0) << ", sigma_min " << s(s.size() - 1) << ", condition "
        << (s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : INFINITY) << ")";
    throw Error(ErrorKind::NonConvergence, msg.str());
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(A.order() + 1));
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    v.normalize();
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    const Complex value = solver.eigenvalues()(i);
    TaylorPolynomial vec = from_vector(v);
    const double res = eigen_residual(A, value, vec);
    pairs.push_back({value, std::move(vec), res});
  }
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return pairs;
}

ZeroFreeCertificate zero_free_certificate(const TaylorPolynomial& f, std::size_t M) {
  if (M < 1024) throw Error(ErrorKind::InvalidSpec, "zero-free certificate needs M >= 1024");
  const std::vector<Complex> nodes = BoundaryGrid::nodes(M);
  const std::vector<Complex> values = evaluate(f, nodes);
  ZeroFreeCertificate cert;
  cert.samples = M;
  cert.min_modulus = std::abs(values[0]);
  double turn = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    cert.min_modulus = std::min(cert.min_modulus, std::abs(values[m]));
    if (values[m] == Complex{} || values[(m + 1) % M] == Complex{}) continue;
    turn += std::arg(values[(m + 1) % M] / values[m]);
  }
  cert.winding_number = static_cast<int>(std::lround(turn / (2.0 * std::numbers::pi)));
  return cert;
}

TaylorPolynomial exp_eigenfunction(const TaylorPolynomial& f, Complex lambda, int N,
                                   std::size_t M) {
  const ZeroFreeCertificate cert = zero_free_certificate(f, M);
  if (!cert.zero_free()) {
    std::ostringstream msg;
    msg << "symbol is not certified zero-free on the closed disk (min |f| = " << cert.min_modulus
        << ", winding number " << cert.winding_number << ")";
    throw Error(ErrorKind::SymbolHasZeros, msg.str());
  }
  if (N == 0) return TaylorPolynomial::constant(1.0);
  const TaylorPolynomial integrand = lambda * reciprocal(f, N - 1);
  return exp(antiderivative(integrand), N);
}

TaylorPolynomial hk_eigenfunction(int m, int k, Complex lambda, int N) {
  if (m < 2) throw Error(ErrorKind::InvalidIndex, "H_k needs m >= 2");
  if (k < 1 || k > m - 1)
    throw Error(ErrorKind::InvalidIndex, "H_k index k must lie in 1..m-1");
  std::vector<Complex> v(std::max(N, 0) + 1);
  Complex c = 1.0;
  for (int n = 0;; ++n) {
    const int index = k + n * (m - 1);
    if (index > N) break;
    v[index] = c;
    c *= lambda / static_cast<double>(k + n * (m - 1));
  }
  return TaylorPolynomial(std::move(v));
}

ZeroEigenspace zero_eigenspace(const std::vector<std::pair<Complex, int>>& zeros, int N) {
  ZeroEigenspace out{TaylorPolynomial::constant(1.0), {}, {}};
  int degree = 0;
  for (const auto& [z, mult] : zeros) {
    if (!(std::abs(z) < 1.0))
      throw Error(ErrorKind::Domain, "zero outside the open unit disk");
    if (mult < 1) throw Error(ErrorKind::InvalidIndex, "zero multiplicity must be >= 1");
    degree += mult;
  }
  for (const auto& [z, mult] : zeros) {
    const TaylorPolynomial factor({-z, 1.0});
    for (int i = 0; i < mult; ++i) out.symbol = multiply(out.symbol, factor, degree);
  }
  const OperatorMatrix adjoint = adjoint_matrix(liouville_matrix(out.symbol, N));
  for (const auto& [z, mult] : zeros) {
    for (int j = 1; j <= mult; ++j) {
      TaylorPolynomial v = kernel({z, j - 1, false}, N);
      out.residuals.push_back(adjoint.apply(v).norm());
      out.basis.push_back(std::move(v));
    }
  }
  return out;
}

FlowCheck flow_check(const TaylorPolynomial& f, const TaylorPolynomial& eigenfunction,
                     Complex lambda, const Trajectory& path) {
  FlowCheck out;
  out.eigen_residual =
      eigen_residual(liouville_matrix(f, eigenfunction.order()), lambda, eigenfunction);
  const std::vector<Complex> values = evaluate(eigenfunction, path.points());
  const double t0 = path.times().front();
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Complex expected = values[0] * std::exp(lambda * (path.times()[k] - t0));
    out.max_error = std::max(out.max_error, std::abs(values[k] - expected));
  }
  return out;
}

}  // namespace hardyliou

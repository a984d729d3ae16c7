#include "hardyliou/dmd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <sstream>

#include "hardyliou/error.hpp"
#include "hardyliou/liouville.hpp"
#include "hardyliou/parallel.hpp"

namespace hardyliou {

std::vector<Complex> DmdModel::eigenvalues() const {
  std::vector<Complex> out;
  out.reserve(modes.size());
  for (const DmdMode& m : modes) out.push_back(m.eigenvalue);
  return out;
}

std::vector<Complex> DmdModel::leading(std::size_t k) const {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < std::min(k, modes.size()); ++i) out.push_back(modes[i].eigenvalue);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

DmdModel fit(const std::vector<Trajectory>& trajectories, int N, std::optional<double> ridge,
             std::vector<std::string> digests) {
  if (trajectories.empty()) throw Error(ErrorKind::InsufficientData, "no trajectories to fit");
  if (N < 1) throw Error(ErrorKind::InvalidSpec, "truncation order must be >= 1");
  if (ridge && !(*ridge >= 0.0)) throw Error(ErrorKind::InvalidSpec, "ridge must be >= 0");
  const std::size_t r = trajectories.size();

  DmdModel model;
  model.order = N;
  model.digests = std::move(digests);
  model.basis.resize(r);
  Eigen::MatrixXcd X(N + 1, static_cast<Eigen::Index>(r));
  Eigen::MatrixXcd Y(N + 1, static_cast<Eigen::Index>(r));
  parallel_for(r, [&](std::size_t i) {
    const Trajectory& path = trajectories[i];
    model.basis[i] = occupation_kernel(path, N);
    const TaylorPolynomial target = szego_kernel(path.back(), N) - szego_kernel(path.front(), N);
    X.col(static_cast<Eigen::Index>(i)) = to_vector(model.basis[i].series, N);
    Y.col(static_cast<Eigen::Index>(i)) = to_vector(target, N);
  });

  model.gram = X.adjoint() * X;
  model.targets = X.adjoint() * Y;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spectrum(model.gram, Eigen::EigenvaluesOnly);
  const double lo = spectrum.eigenvalues().minCoeff();
  const double hi = spectrum.eigenvalues().maxCoeff();
  model.gram_min_eigenvalue = lo;
  if (lo < -1e-10 * std::max(1.0, hi))
    throw Error(ErrorKind::IllConditioned, "Gram matrix is not positive semidefinite");

  const double trace = model.gram.trace().real();
  model.ridge = ridge ? *ridge : 1e-10 * trace;
  if (model.ridge == 0.0 && !(lo > 1e-13 * hi)) {
    std::ostringstream msg;
    msg << "Gram matrix is numerically singular (eigenvalues in [" << lo << ", " << hi
        << "]); pass a positive ridge, e.g. " << 1e-10 * trace;
    throw Error(ErrorKind::IllConditioned, msg.str());
  }
  Eigen::MatrixXcd lhs = model.gram;
  lhs.diagonal().array() += model.ridge;
  model.op = lhs.ldlt().solve(model.targets);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(model.op, true);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NonConvergence, "eigendecomposition of the fitted operator failed");
  // Eigenvectors that X maps to (numerically) zero come from linear dependence
  // among the trajectories and carry no function; they are dropped.
  const double x_norm = std::sqrt(std::max(hi, 0.0));
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    const Complex mu = solver.eigenvalues()(j);
    const Eigen::VectorXcd v = solver.eigenvectors().col(j);
    Eigen::VectorXcd psi = X * v;
    const double scale = psi.norm();
    if (x_norm > 0.0 && scale <= kNullModeThreshold * x_norm * v.norm()) {
      ++model.dropped_modes;
      continue;
    }
    DmdMode mode;
    mode.eigenvalue = mu;
    if (scale > 0.0) {
      mode.residual = (Y * v - mu * psi).norm() / scale;
      psi /= scale;
    }
    mode.mode = from_vector(psi);
    model.modes.push_back(std::move(mode));
  }
  std::stable_sort(model.modes.begin(), model.modes.end(), [](const DmdMode& a, const DmdMode& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
    return a.eigenvalue.imag() < b.eigenvalue.imag();
  });
  return model;
}

Prediction predict(const DmdModel& model, Complex z0, double t) {
  if (model.modes.empty()) throw Error(ErrorKind::InsufficientData, "model has no modes");
  const int N = model.order;
  const Eigen::Index r = static_cast<Eigen::Index>(model.modes.size());
  Eigen::MatrixXcd Psi(N + 1, r);
  for (Eigen::Index j = 0; j < r; ++j) Psi.col(j) = to_vector(model.modes[j].mode, N);
  const Eigen::VectorXcd target = to_vector(szego_kernel(z0, N), N);
  const Eigen::VectorXcd b = Psi.completeOrthogonalDecomposition().solve(target);

  Prediction out;
  out.projection_residual = (Psi * b - target).norm() / target.norm();
  out.low_confidence = !(out.projection_residual <= kProjectionThreshold);
  Complex linear = 0.0;
  for (Eigen::Index j = 0; j < r; ++j)
    linear += b(j) * std::exp(model.modes[j].eigenvalue * t) * Psi(1, j);
  out.value = std::conj(linear);
  return out;
}

}  // namespace hardyliou

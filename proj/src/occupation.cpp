#include "hardyliou/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardyliou/error.hpp"
#include "hardyliou/liouville.hpp"
#include "hardyliou/simd/kernels.hpp"

namespace hardyliou {

Trajectory::Trajectory(std::vector<double> times, std::vector<Complex> points, double margin)
    : times_(std::move(times)), points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorKind::InsufficientData, "trajectory has no samples");
  if (times_.size() != points_.size())
    throw Error(ErrorKind::InvalidSpec, "trajectory times and points differ in length");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(times_[k]) || !std::isfinite(points_[k].real()) ||
        !std::isfinite(points_[k].imag()))
      throw Error(ErrorKind::InvalidSpec, "non-finite trajectory sample " + std::to_string(k));
    if (k > 0 && !(times_[k] > times_[k - 1]))
      throw Error(ErrorKind::InvalidSpec, "times not strictly increasing at sample " + std::to_string(k));
    if (std::abs(points_[k]) > 1.0 - margin)
      throw Error(ErrorKind::Domain, "sample " + std::to_string(k) + " has |z| = " +
                                         std::to_string(std::abs(points_[k])) + " > 1 - margin");
  }
  uniform_ = true;
  if (times_.size() > 2) {
    const double h0 = times_[1] - times_[0];
    for (std::size_t k = 2; k < times_.size(); ++k) {
      if (std::abs((times_[k] - times_[k - 1]) - h0) > 1e-9 * h0) {
        uniform_ = false;
        break;
      }
    }
  }
}

double Trajectory::max_radius() const {
  double r = 0.0;
  for (const auto& z : points_) r = std::max(r, std::abs(z));
  return r;
}

double Trajectory::max_step() const {
  double h = 0.0;
  for (std::size_t k = 1; k < times_.size(); ++k) h = std::max(h, times_[k] - times_[k - 1]);
  return h;
}

Trajectory Trajectory::then(const Trajectory& next) const {
  if (next.times_.front() != times_.back() || next.points_.front() != points_.back())
    throw Error(ErrorKind::InvalidSpec, "concatenated trajectory must start at the previous end");
  std::vector<double> t(times_);
  std::vector<Complex> z(points_);
  t.insert(t.end(), next.times_.begin() + 1, next.times_.end());
  z.insert(z.end(), next.points_.begin() + 1, next.points_.end());
  return Trajectory(std::move(t), std::move(z), 0.0);
}

Trajectory integrate_ode(const TaylorPolynomial& f, Complex z0, double T, double dt, double margin) {
  if (!(T > 0.0) || !(dt > 0.0)) throw Error(ErrorKind::InvalidSpec, "T and dt must be positive");
  if (!(std::abs(z0) < 1.0 - margin))
    throw Error(ErrorKind::Domain, "initial point lies outside |z| < 1 - margin");
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(T / dt)));
  const double h = T / static_cast<double>(steps);

  std::vector<double> times(steps + 1);
  std::vector<Complex> points(steps + 1);
  times[0] = 0.0;
  points[0] = z0;
  Complex z = z0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Complex k1 = f(z);
    const Complex k2 = f(z + 0.5 * h * k1);
    const Complex k3 = f(z + 0.5 * h * k2);
    const Complex k4 = f(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(k + 1) * h;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0 - margin) {
      std::ostringstream msg;
      msg << "trajectory left |z| <= " << 1.0 - margin << " at t = " << t;
      throw Error(ErrorKind::DiskExit, msg.str());
    }
    times[k + 1] = t;
    points[k + 1] = z;
  }
  return Trajectory(std::move(times), std::move(points), margin);
}

const char* to_string(Quadrature q) { return q == Quadrature::Simpson ? "simpson" : "trapezoid"; }

std::vector<double> quadrature_weights(const Trajectory& path, Quadrature* used) {
  const std::size_t K = path.size();
  if (K < 3) throw Error(ErrorKind::InsufficientData, "quadrature needs at least 3 samples");
  const auto t = path.times();
  std::vector<double> w(K, 0.0);
  if (!path.uniform()) {
    for (std::size_t k = 1; k < K; ++k) {
      const double h = t[k] - t[k - 1];
      w[k - 1] += 0.5 * h;
      w[k] += 0.5 * h;
    }
    if (used) *used = Quadrature::Trapezoid;
    return w;
  }
  const std::size_t panels = K - 1;
  const double h = path.duration() / static_cast<double>(panels);
  const std::size_t simpson_panels = panels % 2 == 0 ? panels : panels - 3;
  for (std::size_t k = 0; k + 2 <= simpson_panels; k += 2) {
    w[k] += h / 3.0;
    w[k + 1] += 4.0 * h / 3.0;
    w[k + 2] += h / 3.0;
  }
  if (simpson_panels != panels) {
    const std::size_t s = simpson_panels;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  if (used) *used = Quadrature::Simpson;
  return w;
}

Complex integrate_samples(const Trajectory& path, std::span<const Complex> samples) {
  const std::vector<double> w = quadrature_weights(path);
  Complex s{};
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * samples[k];
  return s;
}

OccupationKernel occupation_kernel(const Trajectory& path, int N) {
  if (N < 0) throw Error(ErrorKind::InvalidSpec, "negative truncation order");
  Quadrature rule{};
  const std::vector<double> w = quadrature_weights(path, &rule);
  std::vector<Complex> weights(w.begin(), w.end());
  std::vector<Complex> conj_points(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) conj_points[k] = std::conj(path.points()[k]);
  std::vector<Complex> moments(N + 1);
  simd::active().power_moments(weights.data(), conj_points.data(), path.size(), moments.data(),
                               moments.size());
  return {TaylorPolynomial(std::move(moments)), std::make_shared<const Trajectory>(path), rule};
}

double trajectory_defect(const TaylorPolynomial& f, const Trajectory& path) {
  const auto t = path.times();
  const auto z = path.points();
  double defect = 0.0;
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    const Complex slope = (z[k + 1] - z[k - 1]) / (t[k + 1] - t[k - 1]);
    defect = std::max(defect, std::abs(slope - f(z[k])));
  }
  return defect;
}

namespace {

OccupationResidual residual_against(const OperatorMatrix& A, const TaylorPolynomial& f,
                                    const Trajectory& path, Complex end, Complex start, int N) {
  OccupationResidual out;
  out.trajectory_defect = trajectory_defect(f, path);
  const double h = path.max_step();
  out.defect_tolerance = 10.0 * h * h;
  out.trajectory_consistent = out.trajectory_defect <= out.defect_tolerance;

  const OccupationKernel gamma = occupation_kernel(path, N);
  const TaylorPolynomial lhs = adjoint_matrix(A).apply(gamma.series);
  const TaylorPolynomial rhs = szego_kernel(end, N) - szego_kernel(start, N);
  out.residual = (lhs - rhs).norm();
  return out;
}

}  // namespace

OccupationResidual liouville_occupation_residual(const TaylorPolynomial& f, const Trajectory& path,
                                                 int N) {
  return residual_against(liouville_matrix(f, N), f, path, path.back(), path.front(), N);
}

OccupationResidual weighted_occupation_residual(const TaylorPolynomial& f,
                                                const TaylorPolynomial& phi,
                                                const Trajectory& path, int N) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!(std::abs(phi(path.points()[k])) < 1.0))
      throw Error(ErrorKind::CompositionOutOfDisk,
                  "|phi(gamma(t))| >= 1 at sample " + std::to_string(k));
  }
  return residual_against(weighted_liouville_matrix(f, phi, N), f, path, phi(path.back()),
                          phi(path.front()), N);
}

namespace {

// weights_k * conj(f(theta_k)), the common factor of both signal formulas
std::vector<Complex> weighted_conj_symbol(const TaylorPolynomial& f, const Trajectory& path) {
  const std::vector<double> w = quadrature_weights(path);
  const std::vector<Complex> fv = evaluate(f, path.points());
  std::vector<Complex> out(path.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = w[k] * std::conj(fv[k]);
  return out;
}

std::vector<Complex> conj_points(const Trajectory& path) {
  std::vector<Complex> out(path.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::conj(path.points()[k]);
  return out;
}

}  // namespace

TaylorPolynomial adjoint_on_signal(const TaylorPolynomial& f, const Trajectory& path, int N) {
  const std::vector<Complex> weights = weighted_conj_symbol(f, path);
  const std::vector<Complex> zbar = conj_points(path);
  std::vector<Complex> moments(N + 1);  // m_k = sum w conj(f) conj(theta)^k
  simd::active().power_moments(weights.data(), zbar.data(), path.size(), moments.data(),
                               moments.size());
  std::vector<Complex> v(N + 1);
  for (int n = 1; n <= N; ++n) v[n] = static_cast<double>(n) * moments[n - 1];
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial adjoint_on_signal_joint_conjugate(const TaylorPolynomial& f,
                                                   const Trajectory& path, int N) {
  const std::vector<Complex> weights = weighted_conj_symbol(f, path);
  const std::vector<Complex> zbar = conj_points(path);
  std::vector<Complex> moments(N + 2);
  simd::active().power_moments(weights.data(), zbar.data(), path.size(), moments.data(),
                               moments.size());
  std::vector<Complex> v(N + 1);
  for (int n = 0; n <= N; ++n) v[n] = static_cast<double>(n + 1) * moments[n + 1];
  return TaylorPolynomial(std::move(v));
}

}  // namespace hardyliou

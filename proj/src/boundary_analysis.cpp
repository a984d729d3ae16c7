#include "hardyliou/boundary_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardyliou/error.hpp"
#include "hardyliou/parallel.hpp"

namespace hardyliou {

namespace {

Complex polar(double r, std::size_t k, std::size_t K) {
  return std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K));
}

double checked_kernel_action(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                             const TaylorPolynomial& dphi, Complex w) {
  const Complex p = phi(w);
  const double p2 = std::norm(p);
  if (!(p2 < 1.0)) throw Error(ErrorKind::CompositionOutOfDisk, "|phi(w)| >= 1 at a sample point");
  const double w2 = std::norm(w);
  return std::norm(f(w)) * std::norm(dphi(w)) * (1.0 - w2) * (1.0 + p2) /
         ((1.0 - p2) * (1.0 - p2) * (1.0 - p2));
}

std::vector<double> probe_radii() {
  std::vector<double> radii;
  for (int k = 2; k <= 12; ++k) radii.push_back(1.0 - std::pow(10.0, -0.5 * k));
  return radii;
}

constexpr std::size_t kProbeAngles = 256;

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros) : zeros_(std::move(zeros)) {
  for (Complex a : zeros_)
    if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::Domain, "Blaschke zero outside the open disk");
}

Complex BlaschkeProduct::value(Complex z) const {
  Complex v = 1.0;
  for (Complex a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

Complex BlaschkeProduct::derivative(Complex z) const {
  Complex total = 0.0;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const Complex a = zeros_[i];
    const Complex d = 1.0 - std::conj(a) * z;
    Complex term = (1.0 - std::norm(a)) / (d * d);
    for (std::size_t j = 0; j < zeros_.size(); ++j)
      if (j != i) term *= (z - zeros_[j]) / (1.0 - std::conj(zeros_[j]) * z);
    total += term;
  }
  return total;
}

TaylorPolynomial BlaschkeProduct::series(int N) const {
  TaylorPolynomial out = TaylorPolynomial::constant(1.0);
  for (Complex a : zeros_) {
    const TaylorPolynomial factor = multiply(TaylorPolynomial({-a, 1.0}), szego_kernel(a, N), N);
    out = multiply(out, factor, N);
  }
  return out.truncated(N);
}

std::vector<Complex> PolarGrid::points() const {
  std::vector<Complex> pts;
  pts.reserve(radii * angles);
  for (std::size_t i = 0; i < radii; ++i) {
    const double r = radii > 1 ? r_max * static_cast<double>(i) / static_cast<double>(radii - 1)
                               : r_max;
    for (std::size_t k = 0; k < angles; ++k) pts.push_back(polar(r, k, angles));
  }
  return pts;
}

TaylorPolynomial weighted_adjoint_on_kernel(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                            Complex w, int N) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::Domain, "kernel point outside the open disk");
  const Complex p = phi(w);
  if (!(std::abs(p) < 1.0)) throw Error(ErrorKind::CompositionOutOfDisk, "|phi(w)| >= 1");
  const Complex scale = std::conj(f(w) * phi.derivative_at(w, 1));
  return scale * k1_kernel(p, N).series;
}

double kernel_action_norm_sq(const TaylorPolynomial& f, const TaylorPolynomial& phi, Complex w) {
  return checked_kernel_action(f, phi, derivative(phi), w);
}

Complex self_adjoint_symbol_rhs(const TaylorPolynomial& f, const TaylorPolynomial& phi, Complex z) {
  const Complex f0 = f[0], f1 = f[1];
  const Complex p0 = phi[0], p1 = phi[1], p2 = 2.0 * phi[2];
  const Complex c0 = std::conj(p0);
  const Complex d = 1.0 - c0 * z;
  return ((z - c0 * z * z) * std::conj(p1 * f1 + f0 * p2) + 2.0 * z * z * std::conj(p1 * f0)) /
         (d * d * d);
}

SymbolRelation self_adjoint_symbol_relation(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                            std::span<const Complex> samples,
                                            std::span<const Complex> kernel_points, int N) {
  SymbolRelation out;
  const TaylorPolynomial dphi = derivative(phi);
  for (Complex z : samples)
    out.residual = std::max(out.residual, std::abs(dphi(z) * f(z) - self_adjoint_symbol_rhs(f, phi, z)));
  if (kernel_points.empty()) return out;
  const OperatorMatrix A = weighted_liouville_matrix(f, phi, N);
  for (Complex a : kernel_points) {
    const TaylorPolynomial forward = A.apply(szego_kernel(a, N));
    const TaylorPolynomial backward = weighted_adjoint_on_kernel(f, phi, a, N);
    out.kernel_defect = std::max(out.kernel_defect, (forward - backward).norm());
  }
  return out;
}

bool probe_diverges(const RadialProfile& probe) {
  const std::size_t n = probe.values.size();
  if (n < 5) return false;
  for (std::size_t i = n - 4; i < n; ++i)
    if (!(probe.values[i] > probe.values[i - 1])) return false;
  return probe.values.back() > 1e3 * probe.values.front();
}

BoundednessBound boundedness_bound(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                   const PolarGrid& grid) {
  BoundednessBound out;
  const TaylorPolynomial dphi = derivative(phi);
  std::vector<double> per_radius(grid.radii, 0.0);
  parallel_for(grid.radii, [&](std::size_t i) {
    const double r = grid.radii > 1
                         ? grid.r_max * static_cast<double>(i) / static_cast<double>(grid.radii - 1)
                         : grid.r_max;
    double best = 0.0;
    for (std::size_t k = 0; k < grid.angles; ++k)
      best = std::max(best, checked_kernel_action(f, phi, dphi, polar(r, k, grid.angles)));
    per_radius[i] = best;
  });
  out.b_prime = per_radius.empty() ? 0.0 : *std::max_element(per_radius.begin(), per_radius.end());
  out.probe = compactness_profile(f, phi, probe_radii(), kProbeAngles);
  out.diverges = probe_diverges(out.probe);
  return out;
}

BlaschkeBound blaschke_bound(const TaylorPolynomial& f, const BlaschkeProduct& phi,
                             const PolarGrid& grid) {
  BlaschkeBound out;
  for (Complex w : grid.points()) {
    const double p2 = std::norm(phi.value(w));
    out.b_prime = std::max(out.b_prime, std::norm(f(w)) * (1.0 + p2) / ((1.0 - p2) * (1.0 - p2)));
  }
  out.ratio.radii = probe_radii();
  for (double r : out.ratio.radii) {
    double worst = 0.0;
    for (std::size_t k = 0; k < kProbeAngles; ++k) {
      const Complex w = polar(r, k, kProbeAngles);
      const double ratio =
          std::abs(phi.derivative(w)) * (1.0 - r * r) / (1.0 - std::norm(phi.value(w)));
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    out.ratio.values.push_back(worst);
  }
  return out;
}

RadialProfile compactness_profile(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                  std::span<const double> radii, std::size_t angles) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      throw Error(ErrorKind::Domain, "profile radii must lie in (0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw Error(ErrorKind::InvalidSpec, "profile radii must increase strictly");
  }
  const TaylorPolynomial dphi = derivative(phi);
  RadialProfile out{std::vector<double>(radii.begin(), radii.end()),
                    std::vector<double>(radii.size(), 0.0)};
  parallel_for(radii.size(), [&](std::size_t i) {
    double best = 0.0;
    for (std::size_t k = 0; k < angles; ++k)
      best = std::max(best, checked_kernel_action(f, phi, dphi, polar(radii[i], k, angles)));
    out.values[i] = best;
  });
  return out;
}

std::vector<double> monomial_norm_sequence(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                           int n_max, std::size_t M) {
  if (n_max < 0) throw Error(ErrorKind::InvalidIndex, "n_max must be >= 0");
  if (M == 0) throw Error(ErrorKind::InvalidSpec, "need at least one boundary sample");
  const std::vector<Complex> nodes = BoundaryGrid::nodes(M);
  const std::vector<Complex> fv = evaluate(f, nodes);
  const std::vector<Complex> pv = evaluate(phi, nodes);
  const std::vector<Complex> dv = evaluate(derivative(phi), nodes);
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::vector<double> weight(M), power(M, 1.0);
  for (std::size_t m = 0; m < M; ++m) weight[m] = std::norm(fv[m]) * std::norm(dv[m]);
  for (int n = 1; n <= n_max; ++n) {
    double sum = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      sum += weight[m] * power[m];
      power[m] *= std::norm(pv[m]);
    }
    out[static_cast<std::size_t>(n)] = static_cast<double>(n) * n * sum / static_cast<double>(M);
  }
  return out;
}

HsNorm hs_norm(const TaylorPolynomial& f, const TaylorPolynomial& phi, int N, std::size_t M) {
  if (M == 0) throw Error(ErrorKind::InvalidSpec, "need at least one boundary sample");
  HsNorm out;
  const std::vector<Complex> nodes = BoundaryGrid::nodes(M);
  const std::vector<Complex> fv = evaluate(f, nodes);
  const std::vector<Complex> pv = evaluate(phi, nodes);
  const std::vector<Complex> dv = evaluate(derivative(phi), nodes);
  double sum = 0.0, printed = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double p2 = std::norm(pv[m]);
    if (!(p2 < 1.0)) {
      out.finite = false;
      break;
    }
    const double base = std::norm(fv[m]) * std::norm(dv[m]) * (1.0 + p2) /
                        ((1.0 - p2) * (1.0 - p2) * (1.0 - p2));
    sum += base;
    printed += base * p2;
  }
  if (out.finite) {
    out.quadrature_sq = sum / static_cast<double>(M);
    out.printed_sq = printed / static_cast<double>(M);
  } else {
    out.quadrature_sq = out.printed_sq = std::numeric_limits<double>::infinity();
  }
  out.frobenius_sq = weighted_liouville_matrix(f, phi, N).entries().squaredNorm();
  return out;
}

OccupationSelfAdjoint occupation_self_adjoint_relation(const TaylorPolynomial& f,
                                                       const TaylorPolynomial& phi,
                                                       const Trajectory& path, int N) {
  const Complex end = phi(path.back());
  const Complex start = phi(path.front());
  if (!(std::abs(end) < 1.0 && std::abs(start) < 1.0))
    throw Error(ErrorKind::CompositionOutOfDisk, "phi maps a trajectory endpoint out of the disk");
  const TaylorPolynomial dgamma = derivative(occupation_kernel(path, N + 1).series);
  const TaylorPolynomial weight = multiply(derivative(phi), f, N);
  const TaylorPolynomial rhs = szego_kernel(end, N) - szego_kernel(start, N);
  OccupationSelfAdjoint out;
  out.as_printed = (multiply(dgamma, weight, N) - rhs).norm();
  out.composed = (multiply(compose(dgamma, phi, N), weight, N) - rhs).norm();
  return out;
}

}  // namespace hardyliou

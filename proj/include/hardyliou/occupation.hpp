#pragma once

// Trajectories in the disk, a fixed-step RK4 integrator, occupation kernels
// Gamma_theta (the representer of g -> int_0^T g(theta(t)) dt) and the adjoint
// relations they satisfy.

#include <memory>
#include <span>
#include <vector>

#include "hardyliou/series.hpp"

namespace hardyliou {

inline constexpr double kDefaultDiskMargin = 1e-3;

class Trajectory {
 public:
  /// Throws InsufficientData for an empty path, InvalidSpec for non-increasing
  /// times or mismatched lengths, Domain for a sample with |z| > 1 - margin.
  Trajectory(std::vector<double> times, std::vector<Complex> points,
             double margin = kDefaultDiskMargin);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const Complex> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool uniform() const noexcept { return uniform_; }
  double duration() const noexcept { return times_.back() - times_.front(); }
  double max_radius() const;
  Complex front() const { return points_.front(); }
  Complex back() const { return points_.back(); }
  /// Largest step; the spacing for uniform grids.
  double max_step() const;

  /// Concatenation; the second path must start where this one ends.
  Trajectory then(const Trajectory& next) const;

 private:
  std::vector<double> times_;
  std::vector<Complex> points_;
  bool uniform_ = false;
};

/// Classical RK4 for z' = f(z) with round(T/dt) equal steps. Throws DiskExit
/// (with the exit time) once a step leaves |z| <= 1 - margin.
Trajectory integrate_ode(const TaylorPolynomial& f, Complex z0, double T, double dt,
                         double margin = kDefaultDiskMargin);

enum class Quadrature { Trapezoid, Simpson };

const char* to_string(Quadrature q);

/// Composite Simpson on uniform grids (3/8 rule on the last three panels when the
/// panel count is odd), trapezoid otherwise. Needs at least 3 samples.
std::vector<double> quadrature_weights(const Trajectory& path, Quadrature* used = nullptr);

/// Same rule applied to samples of some function along the path.
Complex integrate_samples(const Trajectory& path, std::span<const Complex> samples);

struct OccupationKernel {
  TaylorPolynomial series;                   // c_n = int conj(theta(t))^n dt
  std::shared_ptr<const Trajectory> source;
  Quadrature quadrature = Quadrature::Simpson;
};

OccupationKernel occupation_kernel(const Trajectory& path, int N);

/// max_k |(z_{k+1} - z_{k-1}) / (t_{k+1} - t_{k-1}) - f(z_k)|
double trajectory_defect(const TaylorPolynomial& f, const Trajectory& path);

struct OccupationResidual {
  double residual = 0.0;
  double trajectory_defect = 0.0;
  double defect_tolerance = 0.0;  // 10 dt^2
  bool trajectory_consistent = true;
};

/// || A_f^* Gamma_gamma - (K_{gamma(T)} - K_{gamma(0)}) || with the matrix adjoint.
OccupationResidual liouville_occupation_residual(const TaylorPolynomial& f, const Trajectory& path,
                                                 int N);

/// || A_{f,phi}^* Gamma_gamma - (K_{phi(gamma(T))} - K_{phi(gamma(0))}) ||.
/// Throws CompositionOutOfDisk if |phi| >= 1 somewhere on the path.
OccupationResidual weighted_occupation_residual(const TaylorPolynomial& f,
                                                const TaylorPolynomial& phi,
                                                const Trajectory& path, int N);

/// int_0^T conj(f(theta(t))) g^[1]_{theta(t)} dt, coefficient n = n int conj(f(theta)) conj(theta)^{n-1}.
/// Equals A_f^* Gamma_theta for any signal theta.
TaylorPolynomial adjoint_on_signal(const TaylorPolynomial& f, const Trajectory& path, int N);

/// The variant with f and g^[1]_z(theta) conjugated jointly, coefficient
/// n = (n+1) int conj(f(theta)) conj(theta)^{n+1}. Reported for comparison only.
TaylorPolynomial adjoint_on_signal_joint_conjugate(const TaylorPolynomial& f,
                                                   const Trajectory& path, int N);

}  // namespace hardyliou

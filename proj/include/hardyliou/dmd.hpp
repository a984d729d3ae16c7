#pragma once

// Finite-rank representation of A_f^* from trajectory data. For each trajectory
// gamma the occupation kernel satisfies A_f^* Gamma = K_{gamma(T)} - K_{gamma(0)},
// so the span of the Gamma_i carries a least-squares model of the adjoint.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hardyliou/occupation.hpp"

namespace hardyliou {

struct DmdMode {
  Complex eigenvalue;      // eigenvalue of the fitted adjoint
  TaylorPolynomial mode;   // unit-norm Taylor coefficients
  double residual = 0.0;   // ||Y v - mu X v|| / ||X v|| on the data
};

struct DmdModel {
  int order = 0;
  double ridge = 0.0;
  std::vector<OccupationKernel> basis;
  Eigen::MatrixXcd gram;      // G_ij = <Gamma_j, Gamma_i>
  Eigen::MatrixXcd targets;   // B_ij = <K_{gamma_j(T)} - K_{gamma_j(0)}, Gamma_i>
  Eigen::MatrixXcd op;        // (G + ridge I)^{-1} B
  double gram_min_eigenvalue = 0.0;
  std::vector<DmdMode> modes;  // sorted by residual, smallest first
  std::size_t dropped_modes = 0;  // eigenvectors in the null space of the Gamma basis
  std::vector<std::string> digests;

  std::vector<Complex> eigenvalues() const;
  /// Eigenvalues of the k modes with the smallest residual, ordered by modulus.
  std::vector<Complex> leading(std::size_t k) const;
};

/// Modes with ||X v|| <= threshold * ||X|| ||v|| are treated as null-space artifacts.
inline constexpr double kNullModeThreshold = 1e-6;

/// ridge defaults to 1e-10 trace(G). With ridge = 0 a numerically singular Gram
/// matrix throws IllConditioned.
DmdModel fit(const std::vector<Trajectory>& trajectories, int N,
             std::optional<double> ridge = std::nullopt, std::vector<std::string> digests = {});

struct Prediction {
  Complex value;
  double projection_residual = 0.0;  // relative least-squares residual of K_{z0} in the mode span
  bool low_confidence = false;
};

inline constexpr double kProjectionThreshold = 1e-4;

/// Expands K_{z0} over the modes, evolves each coefficient by e^{mu t} and reads the
/// state from the linear Taylor coefficient. Since <z, K_w> = w, the state evolves by
/// the conjugated eigenvalues conj(mu) in the forward direction.
Prediction predict(const DmdModel& model, Complex z0, double t);

}  // namespace hardyliou

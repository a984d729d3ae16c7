#pragma once

// Necessary conditions for boundedness and compactness of weighted Liouville
// operators A_{f,phi} g = f phi' g'(phi), sampled over the disk and the circle.

#include <cstddef>
#include <span>
#include <vector>

#include "hardyliou/liouville.hpp"
#include "hardyliou/occupation.hpp"

namespace hardyliou {

/// prod_i (z - a_i) / (1 - conj(a_i) z). A zero at the origin contributes a factor z.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<Complex> zeros);

  const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  Complex value(Complex z) const;
  Complex derivative(Complex z) const;
  TaylorPolynomial series(int N) const;

 private:
  std::vector<Complex> zeros_;
};

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
};

/// Polar sampling of the disk: radii r_max * i / (radii - 1), i = 0..radii-1.
struct PolarGrid {
  std::size_t radii = 64;
  std::size_t angles = 256;
  double r_max = 0.995;

  std::vector<Complex> points() const;
};

/// conj(f(w) phi'(w)) K^(1)_{phi(w)} truncated at N.
TaylorPolynomial weighted_adjoint_on_kernel(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                            Complex w, int N);

/// |f(w)|^2 |phi'(w)|^2 (1 - |w|^2) (1 + |phi(w)|^2) / (1 - |phi(w)|^2)^3, which is
/// ||A^*_{f,phi} k_w||^2 for the normalized kernel k_w.
double kernel_action_norm_sq(const TaylorPolynomial& f, const TaylorPolynomial& phi, Complex w);

struct SymbolRelation {
  double residual = 0.0;       // max over samples of |phi' f - rhs|
  double kernel_defect = 0.0;  // max over kernel points of ||A K_a - A^* K_a||
};

/// Right-hand side of the symbol relation forced by self-adjointness.
Complex self_adjoint_symbol_rhs(const TaylorPolynomial& f, const TaylorPolynomial& phi, Complex z);

SymbolRelation self_adjoint_symbol_relation(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                            std::span<const Complex> samples,
                                            std::span<const Complex> kernel_points, int N);

struct BoundednessBound {
  double b_prime = 0.0;  // grid supremum
  bool diverges = false;
  RadialProfile probe;   // radii 1 - 10^{-k/2}, k = 2..12
};

/// Throws CompositionOutOfDisk if |phi| >= 1 at a grid or probe point.
BoundednessBound boundedness_bound(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                   const PolarGrid& grid = {});

/// True when the last five probe values increase strictly and the last exceeds
/// the first by a factor 1e3.
bool probe_diverges(const RadialProfile& probe);

struct BlaschkeBound {
  double b_prime = 0.0;
  RadialProfile ratio;  // max over angles of | |phi'| (1-|w|^2) / (1-|phi|^2) - 1 |
};

BlaschkeBound blaschke_bound(const TaylorPolynomial& f, const BlaschkeProduct& phi,
                             const PolarGrid& grid = {});

/// Max over `angles` samples at each radius of the kernel action expression.
RadialProfile compactness_profile(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                  std::span<const double> radii, std::size_t angles = 256);

/// ||A_{f,phi} z^n||^2 for n = 0..n_max from the boundary integrand
/// n^2 |f|^2 |phi'|^2 |phi|^{2(n-1)}.
std::vector<double> monomial_norm_sequence(const TaylorPolynomial& f, const TaylorPolynomial& phi,
                                           int n_max, std::size_t M);

struct HsNorm {
  double frobenius_sq = 0.0;
  double quadrature_sq = 0.0;  // mean of |f|^2 |phi'|^2 (1+|phi|^2) / (1-|phi|^2)^3
  double printed_sq = 0.0;     // same with an extra |phi|^2 factor
  bool finite = true;          // false when sup |phi| >= 1 on the circle
};

HsNorm hs_norm(const TaylorPolynomial& f, const TaylorPolynomial& phi, int N, std::size_t M);

struct OccupationSelfAdjoint {
  double as_printed = 0.0;  // || Gamma' phi' f - (K_{phi(gamma(T))} - K_{phi(gamma(0))}) ||
  double composed = 0.0;    // same with Gamma'(phi) in place of Gamma'
};

OccupationSelfAdjoint occupation_self_adjoint_relation(const TaylorPolynomial& f,
                                                       const TaylorPolynomial& phi,
                                                       const Trajectory& path, int N);

}  // namespace hardyliou

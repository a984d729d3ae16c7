#include "cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "hardyliou/boundary_analysis.hpp"
#include "hardyliou/dmd.hpp"
#include "hardyliou/error.hpp"
#include "hardyliou/liouville.hpp"
#include "hardyliou/occupation.hpp"
#include "hardyliou/spectral.hpp"

namespace hardyliou::cli {

namespace {

using namespace std::complex_literals;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Criterion make(int id, std::string name, double value, double tol, std::string formula,
               std::string detail = {}) {
  Criterion c;
  c.id = id;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tol;
  c.formula = std::move(formula);
  c.detail = std::move(detail);
  c.pass = value <= tol;
  return c;
}

std::vector<Complex> sorted_values(const std::vector<EigenPair>& pairs) {
  std::vector<Complex> v;
  for (const EigenPair& p : pairs) v.push_back(p.value);
  return v;
}

Criterion spectrum_of_z() {
  const int N = 64;
  const auto pairs = eigendecompose(liouville_matrix(TaylorPolynomial::monomial(1), N));
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) worst = std::max(worst, std::abs(pairs[n].value - Complex(n)));
  return make(1, "spectrum of A_z is {0..N}", worst, 1e-12, "max_n |lambda_n - n| <= 1e-12, N=64");
}

Criterion affine_spectrum() {
  const int N = 64;
  const std::vector<std::pair<Complex, Complex>> cases = {{1.0, 0.5}, {2.0, 0.3}, {1.0 + 0.5i, 0.2}};
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [alpha, beta] : cases) {
    const auto with = sorted_values(eigendecompose(liouville_matrix(TaylorPolynomial({beta, alpha}), N)));
    const auto without = sorted_values(eigendecompose(liouville_matrix(TaylorPolynomial({0.0, alpha}), N)));
    double err = 0.0;
    for (int n = 0; n <= N; ++n) {
      err = std::max(err, std::abs(with[n] - alpha * static_cast<double>(n)));
      err = std::max(err, std::abs(with[n] - without[n]));
    }
    detail << "alpha=" << alpha << " err=" << fmt(err) << " ";
    worst = std::max(worst, err);
  }
  return make(2, "affine spectrum is {alpha n}, independent of beta", worst, 1e-10,
              "max |lambda_n - alpha n| and |lambda_n(beta) - lambda_n(0)| <= 1e-10, N=64",
              detail.str());
}

Criterion adjoint_oracle(std::uint64_t seed) {
  const int N = 64;
  const std::size_t M = 512;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi), radius(0.0, 0.8);
  std::uniform_int_distribution<int> degree(0, 8);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    std::vector<Complex> fc(degree(rng) + 1);
    for (auto& x : fc) x = {unit(rng), unit(rng)};
    const double r = radius(rng);
    std::vector<Complex> hc(N + 1);
    double p = 1.0;
    for (auto& x : hc) {
      x = std::polar(p, angle(rng));
      p *= r;
    }
    const TaylorPolynomial f(std::move(fc)), h(std::move(hc));
    const TaylorPolynomial viaBoundary = adjoint_apply_boundary(f, h, N, M);
    const TaylorPolynomial viaMatrix = adjoint_matrix(liouville_matrix(f, N)).apply(h);
    worst = std::max(worst, (viaBoundary - viaMatrix).norm());
  }
  return make(3, "boundary adjoint formula matches conjugate transpose", worst, 1e-8,
              "max over 100 random (f, h) of ||boundary - matrix|| <= 1e-8, N=64, M=512",
              "seed=" + std::to_string(seed));
}

Trajectory exact_exponential(Complex z0, double T, int steps) {
  std::vector<double> t(steps + 1);
  std::vector<Complex> z(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    t[k] = T * k / steps;
    z[k] = z0 * std::exp(t[k]);
  }
  return Trajectory(std::move(t), std::move(z));
}

Criterion occupation_relation() {
  const TaylorPolynomial f = TaylorPolynomial::monomial(1);
  const int N = 80;
  const Trajectory path = integrate_ode(f, 0.2, 1.0, 1e-3);
  const OccupationResidual res = liouville_occupation_residual(f, path, N);
  // Quadrature order: exact samples on coarse grids isolate the Simpson error.
  std::vector<double> errs;
  for (int steps : {16, 32, 64}) errs.push_back(liouville_occupation_residual(f, exact_exponential(0.2, 1.0, steps), N).residual);
  const double order = std::min(std::log2(errs[0] / errs[1]), std::log2(errs[1] / errs[2]));
  Criterion c = make(4, "occupation kernel relation for the Liouville adjoint", res.residual, 1e-6,
                     "residual <= 1e-6 (f=z, z0=0.2, T=1, dt=1e-3, N=80) and observed order >= 3.5");
  c.detail = "observed order " + fmt(order) + " from dt=1/16,1/32,1/64 errors " + fmt(errs[0]) +
             " " + fmt(errs[1]) + " " + fmt(errs[2]);
  c.pass = c.pass && order >= 3.5;
  return c;
}

Criterion weighted_relation() {
  const TaylorPolynomial f = TaylorPolynomial::monomial(1);
  const Trajectory path = integrate_ode(f, 0.2, 1.0, 1e-3);
  const OccupationResidual res = weighted_occupation_residual(f, TaylorPolynomial::monomial(2), path, 80);
  return make(5, "occupation kernel relation for the weighted adjoint", res.residual, 1e-6,
              "residual <= 1e-6 (f=z, phi=z^2, z0=0.2, T=1, dt=1e-3, N=80)");
}

Criterion hk_eigenfunctions() {
  const int N = 64;
  double worst = 0.0;
  // H_1 for m=2 is z e^{lambda z}.
  const Complex lambda = 1.0 + 1.0i;
  const TaylorPolynomial h1 = hk_eigenfunction(2, 1, lambda, N);
  double closed = 0.0;
  Complex c = 1.0;
  for (int n = 0; n + 1 <= N; ++n) {
    closed = std::max(closed, std::abs(h1[n + 1] - c));
    c *= lambda / static_cast<double>(n + 1);
  }
  closed = std::max(closed, std::abs(h1[0]));
  for (int m : {2, 3, 4}) {
    const OperatorMatrix adj = adjoint_matrix(liouville_matrix(TaylorPolynomial::monomial(m), N));
    for (int k = 1; k <= m - 1; ++k)
      for (Complex l : {Complex(0.0), Complex(1.0), 1.0 + 1.0i, Complex(-2.0)}) {
        const TaylorPolynomial H = hk_eigenfunction(m, k, l, N);
        worst = std::max(worst, (adj.apply(H) - l * H).norm());
      }
  }
  Criterion out = make(6, "H_k eigenfunctions of A_{z^m}^*", std::max(worst, closed), 1e-8,
                       "max ||A^* H_k - lambda H_k|| over m in {2,3,4}, lambda in {0,1,1+i,-2} "
                       "and |H_1 - z e^{(1+i)z}| <= 1e-8, N=64");
  out.detail = "residual " + fmt(worst) + ", closed form " + fmt(closed);
  return out;
}

Criterion zero_eigenspace_check() {
  const ZeroEigenspace space = zero_eigenspace({{0.5, 2}}, 96);
  const double worst = *std::max_element(space.residuals.begin(), space.residuals.end());
  return make(7, "zero eigenspace of A_f^* for f=(z-1/2)^2", worst, 1e-8,
              "max ||A^* v|| over {K_{1/2}, g^[1]_{1/2}} <= 1e-8, N=96");
}

Criterion self_adjointness() {
  const int N = 64;
  double sa = 0.0, weakest = INFINITY;
  for (double c : {1.5, -0.7}) {
    const TaylorPolynomial base({0.0, c});
    sa = std::max(sa, hermitian_defect(liouville_matrix(base, N)));
    std::vector<TaylorPolynomial> perturbed;
    perturbed.push_back(base + TaylorPolynomial::constant(0.1));
    for (int k = 2; k <= 6; ++k) perturbed.push_back(base + TaylorPolynomial::monomial(k, 0.1));
    perturbed.push_back(base + TaylorPolynomial::monomial(1, 0.1i));
    for (const auto& g : perturbed) weakest = std::min(weakest, hermitian_defect(liouville_matrix(g, N)));
  }
  Criterion out = make(8, "self-adjoint exactly for f = cz with c real", sa, 1e-14,
                       "defect(cz) <= 1e-14 and defect(perturbed) > 1e-3, N=64");
  out.detail = "smallest perturbed defect " + fmt(weakest);
  out.pass = out.pass && weakest > 1e-3;
  return out;
}

Criterion hilbert_schmidt() {
  const HsNorm base = hs_norm(TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(1, 0.5), 64, 1024);
  const double err = std::abs(base.frobenius_sq - 20.0 / 27.0);
  const std::vector<std::pair<TaylorPolynomial, TaylorPolynomial>> battery = {
      {TaylorPolynomial({1.0, 1.0}), TaylorPolynomial({0.0, 0.5})},
      {TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(1, 0.8)},
      {TaylorPolynomial({1.0, 0.0, 0.5}), TaylorPolynomial({0.3, 0.4})},
      {TaylorPolynomial({0.0, 1.0}), TaylorPolynomial({0.0, 0.2, 0.6})},
      {TaylorPolynomial({2.0, -1.0}), TaylorPolynomial({0.1i, 0.7})},
  };
  double worst = 0.0;
  for (const auto& [f, phi] : battery) {
    const HsNorm hs = hs_norm(f, phi, 128, 2048);
    worst = std::max(worst, std::abs(hs.frobenius_sq - hs.quadrature_sq));
  }
  Criterion out = make(9, "Hilbert-Schmidt norm, matrix vs closed form", std::max(err, worst), 1e-8,
                       "|frobenius^2 - 20/27| <= 1e-10 (N=64) and max battery |frobenius^2 - "
                       "quadrature^2| <= 1e-8 (sup|phi| <= 0.8, N=128, M=2048)");
  out.detail = "20/27 error " + fmt(err) + ", battery " + fmt(worst);
  out.pass = err <= 1e-10 && worst <= 1e-8;
  return out;
}

Criterion smirnov() {
  const std::size_t M = 1024;
  const int N = 256;
  double defect = 0.0, outer = 0.0;
  for (const TaylorPolynomial& f : {TaylorPolynomial({2.0, 1.0, 0.0, 0.5}),
                                    TaylorPolynomial({0.0, 1.0i, 0.3}),
                                    TaylorPolynomial({0.5, -0.25, 0.0, 0.0, 0.1})}) {
    const BoundaryGrid fb = to_boundary(f, M);
    const SmirnovPair pair = smirnov_decompose(fb, N);
    defect = std::max(defect, pair.boundary_defect);
    const BoundaryGrid ab = to_boundary(pair.a, M);
    for (std::size_t m = 0; m < M; ++m)
      outer = std::max(outer, std::abs(std::abs(ab[m]) - 1.0 / std::sqrt(1.0 + std::norm(fb[m]))));
  }
  Criterion out = make(10, "Smirnov decomposition f = b/a", defect, 1e-10,
                       "max ||a|^2+|b|^2-1| <= 1e-10 and outer modulus roundtrip <= 1e-8 (M=1024, N=256)");
  out.detail = "outer roundtrip " + fmt(outer);
  out.pass = out.pass && outer <= 1e-8;
  return out;
}

Criterion flow_relation() {
  const TaylorPolynomial f = TaylorPolynomial::monomial(1);
  const Trajectory path = integrate_ode(f, 0.1, 1.0, 1e-4);
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const FlowCheck fc = flow_check(f, TaylorPolynomial::monomial(n), static_cast<double>(n), path);
    worst = std::max({worst, fc.max_error, fc.eigen_residual});
  }
  return make(11, "eigenfunctions evolve along the flow", worst, 1e-8,
              "max_t |z^n(gamma(t)) - z^n(gamma(0)) e^{nt}| <= 1e-8, n <= 5, dt=1e-4");
}

Criterion dmd_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const TaylorPolynomial f({0.1, 0.9});
  const Complex fixed = -1.0 / 9.0;
  std::vector<Trajectory> data;
  for (double r : {0.25, 0.5, 0.75, 1.0})
    for (int k = 0; k < 5; ++k)
      data.push_back(integrate_ode(f, fixed + 0.3 * r * std::polar(1.0, 2.0 * std::numbers::pi * k / 5 + 0.3 * r), 1.0, 1e-3));
  const DmdModel model = fit(data, 64);
  const std::vector<Complex> leading = model.leading(3);
  const Complex expected[3] = {0.0, 0.9, 1.8};
  double eig = leading.size() == 3 ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < leading.size(); ++i) eig = std::max(eig, std::abs(leading[i] - expected[i]));

  const Trajectory truth = integrate_ode(f, 0.3, 1.0, 1e-3);
  double pred = 0.0;
  for (std::size_t k = 0; k < truth.size(); k += 50) {
    const Prediction p = predict(model, 0.3, truth.times()[k]);
    pred = std::max(pred, std::abs(p.value - truth.points()[k]));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Criterion out = make(12, "DMD from 20 trajectories of z' = 0.9z + 0.1", eig, 1e-2,
                       "leading eigenvalues within 1e-2 of {0, 0.9, 1.8}, |predict - RK4| <= 1e-3 "
                       "on t in [0,1], runtime <= 60 s");
  out.detail = "eigenvalue error " + fmt(eig) + ", prediction error " + fmt(pred) + ", " +
               fmt(seconds) + " s";
  out.value = std::max(eig, pred);
  out.pass = eig <= 1e-2 && pred <= 1e-3 && seconds <= 60.0;
  return out;
}

Criterion boundedness() {
  const BoundednessBound scaled = boundedness_bound(TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(1, 0.5));
  const BoundednessBound plain = boundedness_bound(TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(1));
  Criterion out;
  out.id = 13;
  out.name = "boundedness probe separates phi=0.5z from phi=z";
  out.pass = !scaled.diverges && plain.diverges;
  out.value = out.pass ? 0.0 : 1.0;
  out.tolerance = 0.0;
  out.formula = "diverges(f=1, phi=0.5z) = false and diverges(f=1, phi=z) = true";
  out.detail = "B'(0.5z) = " + fmt(scaled.b_prime) + ", B'(z) grid = " + fmt(plain.b_prime);
  return out;
}

}  // namespace

Criterion run_criterion(int id, std::uint64_t seed) {
  const std::function<Criterion()> table[kCriterionCount] = {
      spectrum_of_z,       affine_spectrum,  [seed] { return adjoint_oracle(seed); },
      occupation_relation, weighted_relation, hk_eigenfunctions,
      zero_eigenspace_check, self_adjointness, hilbert_schmidt,
      smirnov,             flow_relation,    dmd_end_to_end,
      boundedness};
  if (id < 1 || id > kCriterionCount) throw Error(ErrorKind::InvalidIndex, "no criterion " + std::to_string(id));
  try {
    return table[id - 1]();
  } catch (const std::exception& e) {
    Criterion c;
    c.id = id;
    c.name = "criterion " + std::to_string(id);
    c.pass = false;
    c.value = INFINITY;
    c.detail = std::string("exception: ") + e.what();
    return c;
  }
}

std::vector<Criterion> run_acceptance(std::uint64_t seed) {
  std::vector<Criterion> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string summary_line(const Criterion& c) {
  char head[32];
  std::snprintf(head, sizeof head, "[%s] %02d ", c.pass ? "PASS" : "FAIL", c.id);
  std::string line = head + c.name + " | value " + fmt(c.value) + " | " + c.formula;
  if (!c.detail.empty()) line += " | " + c.detail;
  return line;
}

}  // namespace hardyliou::cli

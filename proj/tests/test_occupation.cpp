#include <doctest.h>

#include "hardyliou/error.hpp"
#include "hardyliou/liouville.hpp"
#include "hardyliou/occupation.hpp"
#include "oracles.hpp"

using namespace hardyliou;
using namespace std::complex_literals;

namespace {

Trajectory sampled(double T, int steps, const std::function<Complex(double)>& theta) {
  std::vector<double> t(steps + 1);
  std::vector<Complex> z(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    t[k] = T * k / steps;
    z[k] = theta(t[k]);
  }
  return Trajectory(t, z);
}

}  // namespace

TEST_CASE("trajectory validation") {
  CHECK_THROWS_AS(Trajectory({}, {}), Error);
  CHECK_THROWS_AS(Trajectory({0.0, 0.0}, {0.1, 0.2}), Error);
  CHECK_THROWS_AS(Trajectory({0.0, 1.0}, {0.1}), Error);
  CHECK_THROWS_AS(Trajectory({0.0, 1.0}, {0.1, 0.9995}), Error);
  const Trajectory t({0.0, 0.5, 1.0}, {0.1, 0.2, 0.3});
  CHECK(t.uniform());
  CHECK_FALSE(Trajectory({0.0, 0.5, 1.5}, {0.1, 0.2, 0.3}).uniform());
  CHECK(t.max_radius() == doctest::Approx(0.3));
}

TEST_CASE("RK4 integration") {
  const Trajectory exp_path = integrate_ode(TaylorPolynomial::monomial(1), 0.1, 1.0, 1e-3);
  CHECK(std::abs(exp_path.back() - 0.1 * std::exp(1.0)) < 1e-10);
  CHECK(exp_path.size() == 1001);
  const Trajectory still = integrate_ode(TaylorPolynomial::constant(0.0), 0.3i, 1.0, 0.1);
  for (Complex z : still.points()) CHECK(z == 0.3i);
  try {
    integrate_ode(TaylorPolynomial({1.0, 0.0, 1.0}), 0.9, 1.0, 1e-3);
    FAIL("expected disk exit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DiskExit);
  }
}

TEST_CASE("quadrature rules") {
  // Simpson is exact for cubics, including the odd-panel 3/8 tail
  for (int steps : {6, 7}) {
    const Trajectory p = sampled(2.0, steps, [](double t) { return Complex(0.1 * t); });
    std::vector<Complex> cubic;
    for (double t : p.times()) cubic.push_back(t * t * t - t);
    CHECK(std::abs(integrate_samples(p, cubic) - (4.0 - 2.0)) < 1e-14);
  }
  Quadrature used = Quadrature::Simpson;
  const Trajectory irregular({0.0, 0.1, 0.3, 0.6}, {0.1, 0.1, 0.1, 0.1});
  const auto w = quadrature_weights(irregular, &used);
  CHECK(used == Quadrature::Trapezoid);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(0.6));
  CHECK_THROWS_AS(quadrature_weights(Trajectory({0.0, 1.0}, {0.1, 0.1})), Error);
}

TEST_CASE("occupation kernels") {
  const Trajectory constant = sampled(2.0, 10, [](double) { return Complex(0.3, 0.2); });
  CHECK((occupation_kernel(constant, 30).series - 2.0 * szego_kernel(Complex(0.3, 0.2), 30)).norm() < 1e-13);

  const Trajectory circle = sampled(2.0 * std::numbers::pi, 400, [](double t) { return 0.5 * std::exp(1.0i * t); });
  CHECK(std::abs(inner_product(TaylorPolynomial::monomial(2), occupation_kernel(circle, 8).series)) < 1e-12);

  const Trajectory path = integrate_ode(TaylorPolynomial::monomial(1), 0.2, 1.0, 1e-3);
  const OccupationKernel gamma = occupation_kernel(path, 40);
  CHECK(gamma.quadrature == Quadrature::Simpson);
  CHECK(std::abs(gamma.series[1] - std::conj(path.back() - path.front())) < 1e-12);
  const double rmax = path.max_radius();
  for (int n = 0; n <= 40; ++n) CHECK(std::abs(gamma.series[n]) <= path.duration() * std::pow(rmax, n) * (1 + 1e-12));

  // <g, Gamma> equals the same quadrature of g along the path
  std::mt19937_64 rng(4);
  const TaylorPolynomial g(oracle::random_coeffs(rng, 40));
  std::vector<Complex> values;
  for (Complex z : path.points()) values.push_back(g(z));
  CHECK(std::abs(inner_product(g, gamma.series) - integrate_samples(path, values)) < 1e-10);

  // additivity over concatenation
  const Trajectory first = sampled(1.0, 20, [](double t) { return 0.2 + 0.1i * t; });
  const Trajectory second = sampled(1.0, 20, [](double t) { return 0.2 + 0.1i + 0.1 * t; });
  std::vector<double> shifted(second.times().begin(), second.times().end());
  for (double& t : shifted) t += 1.0;
  const Trajectory joined = first.then(Trajectory(shifted, {second.points().begin(), second.points().end()}));
  const TaylorPolynomial sum = occupation_kernel(first, 20).series + occupation_kernel(second, 20).series;
  CHECK((occupation_kernel(joined, 20).series - sum).norm() < 1e-13);
}

TEST_CASE("Liouville occupation relation") {
  const TaylorPolynomial f = TaylorPolynomial::monomial(1);
  const Trajectory path = integrate_ode(f, 0.2, 1.0, 1e-3);
  const OccupationResidual res = liouville_occupation_residual(f, path, 80);
  CHECK(res.residual < 1e-6);
  CHECK(res.trajectory_consistent);

  // fixed point: Gamma = T K_w, right side 0, A^* K_w = 0
  const TaylorPolynomial g({-0.25, 0.5});
  const Trajectory rest = integrate_ode(g, 0.5, 1.0, 0.01);
  CHECK(liouville_occupation_residual(g, rest, 64).residual < 1e-12);

  // residual of a path that does not solve the ODE is flagged
  const Trajectory wrong = integrate_ode(TaylorPolynomial::monomial(1, 2.0), 0.1, 1.0, 1e-3);
  CHECK_FALSE(liouville_occupation_residual(f, wrong, 40).trajectory_consistent);

  // dt-halving: exact samples isolate the Simpson error, observed order near 4
  std::vector<double> errs;
  for (int steps : {16, 32, 64})
    errs.push_back(liouville_occupation_residual(f, sampled(1.0, steps, [](double t) { return 0.2 * std::exp(t); }), 80).residual);
  CHECK(std::log2(errs[0] / errs[1]) > 3.5);
  CHECK(std::log2(errs[1] / errs[2]) > 3.5);
}

TEST_CASE("weighted occupation relation") {
  const TaylorPolynomial f = TaylorPolynomial::monomial(1);
  const Trajectory path = integrate_ode(f, 0.2, 1.0, 1e-3);
  CHECK(weighted_occupation_residual(f, TaylorPolynomial::monomial(2), path, 80).residual < 1e-6);
  const double plain = liouville_occupation_residual(f, path, 60).residual;
  CHECK(std::abs(weighted_occupation_residual(f, TaylorPolynomial::monomial(1), path, 60).residual - plain) < 1e-15);
  const Trajectory still = integrate_ode(TaylorPolynomial::constant(0.0), 0.4, 1.0, 0.01);
  CHECK(weighted_occupation_residual(TaylorPolynomial::constant(0.0), TaylorPolynomial({0.1, 0.5}), still, 30).residual == 0.0);
  CHECK_THROWS_AS(weighted_occupation_residual(f, TaylorPolynomial({0.9, 1.0}), path, 30), Error);
}

TEST_CASE("adjoint on a general signal") {
  const int N = 60;
  const Trajectory constant = sampled(1.5, 12, [](double) { return Complex(0.4, -0.1); });
  const TaylorPolynomial f({0.3, -1.0, 0.5i});
  const Complex w(0.4, -0.1);
  CHECK((adjoint_on_signal(f, constant, N) - 1.5 * std::conj(f(w)) * kernel({w, 1, false}, N)).norm() < 1e-12);
  CHECK(adjoint_on_signal(TaylorPolynomial::constant(0.0), constant, N).norm() == 0.0);

  const Trajectory circle = sampled(std::numbers::pi, 2000, [](double t) { return 0.5 * std::exp(1.0i * t); });
  const TaylorPolynomial z = TaylorPolynomial::monomial(1);
  const Eigen::VectorXcd oracle_side = oracle::liouville(oracle::coeffs(z), N).adjoint() * oracle::vec(occupation_kernel(circle, N).series, N);
  CHECK((oracle::vec(adjoint_on_signal(z, circle, N), N) - oracle_side).norm() < 1e-6);
  // the jointly conjugated variant does not reproduce the matrix adjoint
  CHECK((oracle::vec(adjoint_on_signal_joint_conjugate(z, circle, N), N) - oracle_side).norm() > 1e-3);
}

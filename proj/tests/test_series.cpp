#include <doctest.h>

#include <cmath>

#include "hardyliou/error.hpp"
#include "hardyliou/series.hpp"
#include "oracles.hpp"

using namespace hardyliou;
using namespace std::complex_literals;

TEST_CASE("taylor polynomial invariants") {
  CHECK_THROWS_AS(TaylorPolynomial(std::vector<Complex>{}), Error);
  CHECK_THROWS_AS(TaylorPolynomial({1.0, Complex(NAN, 0.0)}), Error);
  const TaylorPolynomial g({1.0, 2.0i, -3.0});
  CHECK(g.order() == 2);
  CHECK(g[7] == Complex{});
  CHECK(g.norm_sq() == doctest::Approx(14.0));
  CHECK(std::abs(g(0.5) - (1.0 + 1.0i - 0.75)) < 1e-15);
  CHECK(std::abs(g.derivative_at(0.5, 1) - (2.0i - 3.0)) < 1e-15);
  CHECK(TaylorPolynomial({1.0, 0.0, 0.0}).degree() == 0);
}

TEST_CASE("inner products") {
  CHECK(std::abs(inner_product(TaylorPolynomial::monomial(2), TaylorPolynomial::monomial(2)) - 1.0) < 1e-15);
  // <g, K_w> = g(w)
  CHECK(std::abs(inner_product(TaylorPolynomial({1.0, 1.0}), szego_kernel(0.3, 64)) - 1.3) < 1e-15);
  // ||K_{1/2}||^2 = sum 0.25^n -> 4/3
  const Complex kk = inner_product(szego_kernel(0.5, 64), szego_kernel(0.5, 64));
  CHECK(std::abs(kk - 4.0 / 3.0) < tail_tolerance(0.25, 64));
  const TaylorPolynomial a({1.0, 1.0i, 0.5}), b({0.3i, 2.0});
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-15);
}

TEST_CASE("reproducing property within the tail") {
  std::mt19937_64 rng(3);
  const int N = 40;
  for (int trial = 0; trial < 20; ++trial) {
    const TaylorPolynomial g(oracle::random_coeffs(rng, N));
    const Complex w = std::polar(0.8 * (trial + 1) / 21.0, 0.7 * trial);
    CHECK(std::abs(inner_product(g, szego_kernel(w, N)) - g(w)) < 1e-12);
    const TaylorPolynomial longer(oracle::random_coeffs(rng, 2 * N));
    const double tail = longer.norm() * std::pow(std::abs(w), N + 1) / std::sqrt(1.0 - std::norm(w));
    CHECK(std::abs(inner_product(longer, szego_kernel(w, N)) - longer(w)) <= tail + 1e-13);
  }
}

TEST_CASE("derivative kernels") {
  CHECK((kernel({0.0, 0, false}, 8) - TaylorPolynomial::constant(1.0)).norm() == 0.0);
  CHECK((kernel({0.0, 1, false}, 8) - TaylorPolynomial::monomial(1)).norm() == 0.0);
  // <h, g^[j]_w> = h^(j)(w): h = z^3, j = 2, w = 0.5 -> 6 * 0.5
  CHECK(std::abs(inner_product(TaylorPolynomial::monomial(3), kernel({0.5, 2, false}, 16)) - 3.0) < 1e-14);
  const Complex w = 0.3 - 0.4i;
  for (int j = 0; j <= 4; ++j) {
    const TaylorPolynomial g = kernel({w, j, false}, 60);
    double err = 0.0;
    for (int n = 0; n <= 60; ++n)
      err = std::max(err, std::abs(g[n] - oracle::derivative_kernel_coeff(w, j, n)) /
                              std::max(1.0, std::abs(oracle::derivative_kernel_coeff(w, j, n))));
    CHECK(err < 1e-13);
  }
  const TaylorPolynomial k = kernel({0.6, 0, true}, 200);
  CHECK(k.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(kernel({0.2, 1, true}, 8), Error);
  CHECK_THROWS_AS(kernel({1.0, 0, false}, 8), Error);
  CHECK(szego_kernel(0.5, 200).norm_sq() == doctest::Approx(1.0 / 0.75).epsilon(1e-14));
}

TEST_CASE("K^(1) kernel") {
  const K1Kernel zero = k1_kernel(0.0, 10);
  CHECK((zero.series - TaylorPolynomial::monomial(1)).norm() == 0.0);
  CHECK(zero.norm_sq == 1.0);
  const K1Kernel half = k1_kernel(0.5, 200);
  CHECK(half.norm_sq == doctest::Approx(1.25 / (0.75 * 0.75 * 0.75)).epsilon(1e-15));
  double sum = 0.0;
  for (int n = 1; n <= 200; ++n) sum += n * n * std::pow(0.25, n - 1);
  CHECK(std::abs(half.series.norm_sq() - sum) < 1e-12);
  CHECK(std::abs(half.norm_sq - sum) < 1e-12);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 10; ++i) {
    const Complex w(u(rng), u(rng));
    CHECK((k1_kernel(w, 50).series - kernel({w, 1, false}, 50)).norm() < 1e-14);
  }
  CHECK_THROWS_AS(k1_kernel(1.0i, 4), Error);
}

TEST_CASE("antiderivative") {
  CHECK((antiderivative(TaylorPolynomial::constant(1.0)) - TaylorPolynomial::monomial(1)).norm() == 0.0);
  for (int n = 0; n < 6; ++n) {
    const TaylorPolynomial J = antiderivative(TaylorPolynomial::monomial(n));
    CHECK(J.order() == n + 1);
    CHECK(std::abs(J[n + 1] - 1.0 / (n + 1)) < 1e-16);
  }
  const TaylorPolynomial h({1.0, 1.0});
  CHECK(antiderivative(h).norm_sq() == doctest::Approx(1.25));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const TaylorPolynomial r(oracle::random_coeffs(rng, 12));
    CHECK(antiderivative(r).norm() < r.norm());
  }
}

TEST_CASE("series algebra against naive sums") {
  const TaylorPolynomial p = multiply(TaylorPolynomial({1.0, 1.0}), TaylorPolynomial({1.0, -1.0}), 4);
  CHECK((p - TaylorPolynomial({1.0, 0.0, -1.0})).norm() == 0.0);

  const TaylorPolynomial r = reciprocal(TaylorPolynomial({1.0, -0.5}), 30);
  for (int n = 0; n <= 30; ++n) CHECK(std::abs(r[n] - std::pow(0.5, n)) < 1e-16);
  CHECK_THROWS_AS(reciprocal(TaylorPolynomial({0.0, 1.0}), 5), Error);

  const TaylorPolynomial e = exp(TaylorPolynomial::monomial(1), 20);
  double fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(e[n] - 1.0 / fact) < 1e-16);
  }

  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto a = oracle::random_coeffs(rng, 9), b = oracle::random_coeffs(rng, 14);
    const TaylorPolynomial ab = multiply(TaylorPolynomial(a), TaylorPolynomial(b), 16);
    const auto expect = oracle::product(a, b, 16);
    for (int n = 0; n <= 16; ++n) CHECK(std::abs(ab[n] - expect[n]) < 1e-13);
    // a * (1/a) = 1 and exp(g)' = g' exp(g)
    std::vector<Complex> a0 = a;
    a0[0] += 3.0;
    const auto one = oracle::product(a0, oracle::coeffs(reciprocal(TaylorPolynomial(a0), 16)), 16);
    for (int n = 0; n <= 16; ++n) CHECK(std::abs(one[n] - (n == 0 ? 1.0 : 0.0)) < 1e-12);
    const TaylorPolynomial g(oracle::random_coeffs(rng, 6, 0.5));
    const TaylorPolynomial eg = exp(g, 20);
    const auto rhs = oracle::product(oracle::coeffs(derivative(g)), oracle::coeffs(eg), 19);
    const TaylorPolynomial lhs = derivative(eg);
    for (int n = 0; n <= 19; ++n) CHECK(std::abs(lhs[n] - rhs[n]) < 1e-12);
  }
  const TaylorPolynomial d = derivative(TaylorPolynomial({5.0, 1.0, 2.0, 3.0}));
  CHECK((d - TaylorPolynomial({1.0, 4.0, 9.0})).norm() == 0.0);
}

TEST_CASE("composition matches pointwise evaluation") {
  const TaylorPolynomial a({1.0, -2.0, 0.5i, 1.0});
  const TaylorPolynomial b({0.1, 0.5});
  const TaylorPolynomial ab = compose(a, b, 40);
  for (Complex z : {Complex(0.2), 0.3i, Complex(-0.5, 0.1)}) CHECK(std::abs(ab(z) - a(b(z))) < 1e-13);
}

TEST_CASE("boundary sampling and projection") {
  const TaylorPolynomial z3 = TaylorPolynomial::monomial(3);
  CHECK((project_h2(to_boundary(z3, 16), 3) - z3).norm() < 1e-12);
  std::vector<Complex> neg(32), cos2(32);
  for (std::size_t m = 0; m < 32; ++m) {
    const double t = BoundaryGrid::angle(m, 32);
    neg[m] = std::polar(1.0, -t);
    cos2[m] = 2.0 * std::cos(t);
  }
  CHECK(project_h2(BoundaryGrid(neg), 8).norm() < 1e-14);
  CHECK((project_h2(BoundaryGrid(cos2), 8) - TaylorPolynomial::monomial(1)).norm() < 1e-14);
  CHECK_THROWS_AS(to_boundary(z3, 7), Error);
  CHECK_THROWS_AS(project_h2(BoundaryGrid(neg), 16), Error);

  std::mt19937_64 rng(21);
  for (std::size_t M : {64u, 100u, 256u}) {
    const auto g = oracle::random_coeffs(rng, 30);
    const BoundaryGrid b = to_boundary(TaylorPolynomial(g), M);
    const auto naive = oracle::samples(g, M);
    for (std::size_t m = 0; m < M; ++m) CHECK(std::abs(b[m] - naive[m]) < 1e-12);
    CHECK((project_h2(b, 30) - TaylorPolynomial(g)).norm() < 1e-12);
  }
  CHECK(default_boundary_samples(64) == 512);
  CHECK(default_boundary_samples(63) == 256);
}

TEST_CASE("outer functions from boundary modulus") {
  const std::size_t M = 1024;
  std::vector<Complex> two(M, 2.0), e(M, std::exp(1.0)), m(M);
  CHECK((outer_from_modulus(BoundaryGrid(two), 16) - TaylorPolynomial::constant(2.0)).norm() < 1e-14);
  CHECK(std::abs(outer_from_modulus(BoundaryGrid(e), 16)[0] - std::exp(1.0)) < 1e-14);
  for (std::size_t k = 0; k < M; ++k) m[k] = std::abs(1.0 - 0.5 * std::polar(1.0, BoundaryGrid::angle(k, M)));
  const TaylorPolynomial G = outer_from_modulus(BoundaryGrid(m), 64);
  CHECK((G - TaylorPolynomial({1.0, -0.5})).norm() < 1e-13);

  // roundtrip for a smooth modulus bounded away from zero
  std::vector<Complex> smooth(M);
  for (std::size_t k = 0; k < M; ++k) {
    const double t = BoundaryGrid::angle(k, M);
    smooth[k] = 1.5 + std::cos(t) + 0.3 * std::sin(3 * t);
  }
  const BoundaryGrid back = to_boundary(outer_from_modulus(BoundaryGrid(smooth), 256), M);
  double err = 0.0;
  for (std::size_t k = 0; k < M; ++k) err = std::max(err, std::abs(std::abs(back[k]) - smooth[k].real()));
  CHECK(err < 1e-8);

  std::vector<Complex> bad(M, 1.0);
  bad[5] = 0.0;
  CHECK_THROWS_AS(outer_from_modulus(BoundaryGrid(bad), 16), Error);
}

TEST_CASE("tolerance helpers") {
  CHECK(tail_tolerance(0.5, 9, 2.0) == doctest::Approx(2.0 * std::pow(0.5, 10) / 0.5));
  CHECK(std::isinf(tail_tolerance(1.0, 9)));
  CHECK(within(1e-9, 1e-10, 1e-9, 2.0));
  CHECK_FALSE(within(1e-8, 1e-10, 1e-9, 2.0));
}

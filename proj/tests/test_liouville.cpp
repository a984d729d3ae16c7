#include <doctest.h>

#include "hardyliou/error.hpp"
#include "hardyliou/liouville.hpp"
#include "oracles.hpp"

using namespace hardyliou;
using namespace std::complex_literals;

TEST_CASE("liouville matrix structure") {
  const int N = 12;
  const Eigen::MatrixXcd Az = liouville_matrix(TaylorPolynomial::monomial(1), N).entries();
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) diag(n, n) = static_cast<double>(n);
  CHECK(oracle::max_abs(Az - diag) == 0.0);

  const Eigen::MatrixXcd A1 = liouville_matrix(TaylorPolynomial::constant(1.0), N).entries();
  for (int n = 1; n <= N; ++n) CHECK(A1(n - 1, n) == Complex(n));
  CHECK(A1.cwiseAbs().sum() == doctest::Approx(N * (N + 1) / 2.0));

  const Eigen::MatrixXcd A2 = liouville_matrix(TaylorPolynomial::monomial(2), N).entries();
  for (int n = 0; n < N; ++n) CHECK(A2(n + 1, n) == Complex(n));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto f = oracle::random_coeffs(rng, i % 9);
    CHECK(oracle::max_abs(liouville_matrix(TaylorPolynomial(f), 20).entries() - oracle::liouville(f, 20)) < 1e-14);
  }
  CHECK_THROWS_AS(OperatorMatrix(Eigen::MatrixXcd::Zero(2, 3), OperatorKind::Liouville), Error);
}

TEST_CASE("weighted matrices") {
  std::mt19937_64 rng(2);
  const int N = 24;
  for (int i = 0; i < 8; ++i) {
    const auto f = oracle::random_coeffs(rng, 1 + i % 4);
    const auto phi = oracle::random_coeffs(rng, 1 + i % 3, 0.3);
    const OperatorMatrix W = weighted_liouville_matrix(TaylorPolynomial(f), TaylorPolynomial(phi), N);
    CHECK(oracle::max_abs(W.entries() - oracle::weighted(f, phi, N)) < 1e-12);
    // phi = z reduces to the plain operator
    CHECK(oracle::max_abs(weighted_liouville_matrix(TaylorPolynomial(f), TaylorPolynomial::monomial(1), N).entries() -
                          liouville_matrix(TaylorPolynomial(f), N).entries()) == 0.0);
    // phi = a z is the scaled operator, bit for bit
    const double a = 0.5 + 0.05 * i;
    CHECK((weighted_liouville_matrix(TaylorPolynomial(f), TaylorPolynomial::monomial(1, a), N).entries().array() ==
           scaled_liouville_matrix(TaylorPolynomial(f), a, N).entries().array()).all());
  }
  // f = 1, phi = z^2: column n = 2n z^{2n-1}
  const Eigen::MatrixXcd S = weighted_liouville_matrix(TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(2), 10).entries();
  for (int n = 1; 2 * n - 1 <= 10; ++n) CHECK(S(2 * n - 1, n) == Complex(2 * n));
  CHECK(S.cwiseAbs().sum() == doctest::Approx(2.0 * (1 + 2 + 3 + 4 + 5)));
  const OperatorMatrix warned = weighted_liouville_matrix(TaylorPolynomial::constant(1.0), TaylorPolynomial({1.2, 0.1}), 4);
  CHECK_FALSE(warned.warnings().empty());
}

TEST_CASE("matrix adjoint") {
  const OperatorMatrix Az = liouville_matrix(TaylorPolynomial::monomial(1), 16);
  CHECK(oracle::max_abs(adjoint_matrix(Az).entries() - Az.entries()) == 0.0);
  CHECK(adjoint_matrix(Az).is_adjoint());
  const OperatorMatrix Az2 = adjoint_matrix(liouville_matrix(TaylorPolynomial::monomial(2), 16));
  for (int j = 0; j <= 16; ++j) {
    const TaylorPolynomial out = Az2.apply(TaylorPolynomial::monomial(j));
    const TaylorPolynomial expect = j >= 2 ? TaylorPolynomial::monomial(j - 1, j - 1.0) : TaylorPolynomial::constant(0.0);
    CHECK((out - expect).norm() == 0.0);
  }
  std::mt19937_64 rng(4);
  const OperatorMatrix R(Eigen::MatrixXcd::Random(7, 7), OperatorKind::Liouville);
  CHECK(oracle::max_abs(adjoint_matrix(adjoint_matrix(R)).entries() - R.entries()) == 0.0);
}

TEST_CASE("boundary adjoint formula against the conjugate transpose") {
  const int N = 64;
  const std::size_t M = 512;
  for (int k = 0; k <= 10; ++k) {
    const TaylorPolynomial out = adjoint_apply_boundary(TaylorPolynomial::monomial(1), TaylorPolynomial::monomial(k), N, M);
    CHECK((out - TaylorPolynomial::monomial(k, k)).norm() < 1e-12);
  }
  CHECK(adjoint_apply_boundary(TaylorPolynomial::monomial(2), TaylorPolynomial::monomial(1), N, M).norm() < 1e-13);
  const TaylorPolynomial f({1.0, 1.0});
  const TaylorPolynomial h = szego_kernel(0.4, N);
  const Eigen::VectorXcd oracle_side = oracle::liouville(oracle::coeffs(f), N).adjoint() * oracle::vec(h, N);
  CHECK((oracle::vec(adjoint_apply_boundary(f, h, N, M), N) - oracle_side).norm() < 1e-8);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> r(0.0, 0.8);
  for (int i = 0; i < 30; ++i) {
    const auto fc = oracle::random_coeffs(rng, i % 9);
    std::vector<Complex> hc = oracle::random_coeffs(rng, N);
    const double rr = r(rng);
    for (int n = 0; n <= N; ++n) hc[n] *= std::pow(rr, n);
    const Eigen::VectorXcd expect = oracle::liouville(fc, N).adjoint() * oracle::vec(TaylorPolynomial(hc), N);
    const TaylorPolynomial got = adjoint_apply_boundary(TaylorPolynomial(fc), TaylorPolynomial(hc), N, M);
    CHECK((oracle::vec(got, N) - expect).norm() < 1e-8);
  }
  CHECK_THROWS_AS(adjoint_apply_boundary(f, h, N, 200), Error);
  CHECK_THROWS_AS(adjoint_apply_boundary(f, szego_kernel(0.4, N + 1), N, M), Error);
}

TEST_CASE("adjoint on derivative kernels: Leibniz rule matches the oracle") {
  const int N = 96;
  const auto oracle_apply = [&](const TaylorPolynomial& f, Complex w, int j) {
    return adjoint_matrix(liouville_matrix(f, N)).apply(kernel({w, j - 1, false}, N));
  };
  // j = 1 with f = z, w = 0.5
  const TaylorPolynomial z = TaylorPolynomial::monomial(1);
  const TaylorPolynomial j1 = adjoint_on_derivative_kernel(z, 0.5, 1, N);
  CHECK((j1 - 0.5 * kernel({0.5, 1, false}, N)).norm() < 1e-12);
  CHECK((j1 - oracle_apply(z, 0.5, 1)).norm() < 1e-12);
  // double zero at w: both rules vanish for j = 2
  const TaylorPolynomial dz = multiply(TaylorPolynomial({-0.3, 1.0}), TaylorPolynomial({-0.3, 1.0}), 2);
  CHECK(adjoint_on_derivative_kernel(dz, 0.3, 2, N, KernelAdjointRule::AsPrinted).norm() < 1e-14);
  CHECK(adjoint_on_derivative_kernel(dz, 0.3, 2, N, KernelAdjointRule::Leibniz).norm() < 1e-14);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    const TaylorPolynomial f(oracle::random_coeffs(rng, 2 + trial % 4));
    const Complex w(0.1 * trial - 0.2, 0.25);
    for (int j = 1; j <= 5; ++j) {
      const TaylorPolynomial truth = oracle_apply(f, w, j);
      const double scale = std::max(1.0, truth.norm());
      const double leibniz = (adjoint_on_derivative_kernel(f, w, j, N, KernelAdjointRule::Leibniz) - truth).norm();
      const double printed = (adjoint_on_derivative_kernel(f, w, j, N, KernelAdjointRule::AsPrinted) - truth).norm();
      CHECK(leibniz < 1e-9 * scale);
      if (j <= 2) CHECK(printed < 1e-9 * scale);
      if (j >= 3) CHECK(printed > 1e-3 * scale);
    }
  }
  // f = z^2, w = 0.3, j = 3
  const TaylorPolynomial z2 = TaylorPolynomial::monomial(2);
  const TaylorPolynomial truth = oracle_apply(z2, 0.3, 3);
  CHECK((adjoint_on_derivative_kernel(z2, 0.3, 3, N) - truth).norm() < 1e-10);
  CHECK((adjoint_on_derivative_kernel(z2, 0.3, 3, N, KernelAdjointRule::AsPrinted) - truth).norm() > 1e-2);
  CHECK_THROWS_AS(adjoint_on_derivative_kernel(z2, 0.3, 0, N), Error);
}

TEST_CASE("Smirnov decomposition") {
  const std::size_t M = 1024;
  const SmirnovPair zero = smirnov_decompose(BoundaryGrid(std::vector<Complex>(M, 0.0)), 32);
  CHECK((zero.a - TaylorPolynomial::constant(1.0)).norm() < 1e-14);
  CHECK(zero.b.norm() < 1e-14);
  const Complex c(0.6, -0.8);
  const SmirnovPair constant = smirnov_decompose(BoundaryGrid(std::vector<Complex>(M, c)), 32);
  const double a0 = 1.0 / std::sqrt(1.0 + std::norm(c));
  CHECK((constant.a - TaylorPolynomial::constant(a0)).norm() < 1e-14);
  CHECK((constant.b - TaylorPolynomial::constant(c * a0)).norm() < 1e-14);

  const TaylorPolynomial f({0.5, 1.0, -0.3i, 0.2});
  const SmirnovPair pair = smirnov_decompose(to_boundary(f, M), 256);
  CHECK(pair.normalized);
  CHECK(pair.boundary_defect < 1e-10);
  CHECK(pair.a[0].real() > 0.0);
  CHECK(std::abs(pair.a[0].imag()) < 1e-15);
  // f a = b, checked at interior points
  for (Complex w : {Complex(0.1), 0.4i, Complex(-0.3, 0.2)}) CHECK(std::abs(f(w) * pair.a(w) - pair.b(w)) < 1e-10);
}

TEST_CASE("domain membership") {
  CHECK(domain_membership_check(TaylorPolynomial::constant(1.0), TaylorPolynomial::monomial(1),
                                TaylorPolynomial::constant(1.0), 0.0) < 1e-14);
  CHECK(domain_membership_check(TaylorPolynomial({1.0, -0.5}), TaylorPolynomial::constant(1.0),
                                TaylorPolynomial::constant(1.0), 0.0) < 1e-13);
  std::mt19937_64 rng(13);
  std::vector<Complex> h = oracle::random_coeffs(rng, 64);
  for (int n = 0; n <= 64; ++n) h[n] *= std::pow(0.6, n);
  const SmirnovPair pair = smirnov_decompose(to_boundary(TaylorPolynomial({0.3, 1.0}), 1024), 128);
  CHECK(domain_membership_check(pair.a, pair.b, TaylorPolynomial(h), 0.7) < 1e-8);
  CHECK_THROWS_AS(domain_membership_check(TaylorPolynomial::monomial(1), TaylorPolynomial::constant(1.0),
                                          TaylorPolynomial::constant(1.0), 0.0),
                  Error);
}

TEST_CASE("hermitian defect") {
  const int N = 32;
  CHECK(hermitian_defect(liouville_matrix(TaylorPolynomial::monomial(1, 2.0), N)) == 0.0);
  CHECK(hermitian_defect(liouville_matrix(TaylorPolynomial::monomial(1, 1.0i), N)) == doctest::Approx(2.0 * N));
  CHECK(hermitian_defect(liouville_matrix(TaylorPolynomial({0.1, 1.0}), N)) > 0.1);
  for (int k = 0; k <= 6; ++k) {
    if (k == 1) continue;
    const TaylorPolynomial f = TaylorPolynomial::monomial(1, 0.7) + TaylorPolynomial::monomial(k, 0.1);
    CHECK(hermitian_defect(liouville_matrix(f, N)) > 1e-3);
  }
}

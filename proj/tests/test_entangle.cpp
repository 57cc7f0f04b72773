#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gravwell/entangle.hpp>

#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gravwell;

namespace {

MatrixXd random_unit_product(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss;
  VectorXd b(n), c(n);
  for (int i = 0; i < n; ++i) {
    b(i) = gauss(rng);
    c(i) = gauss(rng);
  }
  b.normalize();
  c.normalize();
  return b * c.transpose();
}

}  // namespace

TEST_CASE("entropy: product, Bell, fixed Schmidt pair") {
  MatrixXd a = MatrixXd::Zero(5, 5);
  a(0, 0) = 1.0;
  CHECK(entropy(a) == doctest::Approx(0.0).epsilon(1e-14));

  MatrixXd bell = MatrixXd::Zero(4, 4);
  bell(0, 0) = bell(1, 1) = 1.0 / std::numbers::sqrt2;
  CHECK(entropy(bell) == doctest::Approx(std::log(2.0)).epsilon(1e-13));

  MatrixXd two = MatrixXd::Zero(3, 3);
  two(0, 0) = 0.8;
  two(1, 1) = 0.6;
  const double want = -(0.64 * std::log(0.64) + 0.36 * std::log(0.36));
  CHECK(entropy(two) == doctest::Approx(want).epsilon(1e-13));
  CHECK(want == doctest::Approx(0.6534).epsilon(1e-4));
}

TEST_CASE("entropy rejects unnormalized input") {
  MatrixXd a = MatrixXd::Zero(3, 3);
  a(0, 0) = 0.9;
  CHECK_THROWS_AS(entropy(a), invalid_parameter);
  CHECK_THROWS_AS(witness(a, 2), invalid_parameter);
  CHECK_THROWS_AS(mode_probabilities(a), invalid_parameter);
}

TEST_CASE("entropy invariances: exchange, zero padding") {
  std::mt19937 rng(31);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    MatrixXd a(6, 6);
    for (int i = 0; i < 36; ++i) a(i / 6, i % 6) = gauss(rng);
    a /= a.norm();
    CHECK(entropy(a) == doctest::Approx(entropy(a.transpose().eval())).epsilon(1e-11));

    MatrixXd padded = MatrixXd::Zero(9, 9);
    padded.topLeftCorner(6, 6) = a;
    CHECK(entropy(padded) == doctest::Approx(entropy(a)).epsilon(1e-11));
  }
}

TEST_CASE("schmidt coefficients: normalized, nonincreasing, clamped") {
  std::mt19937 rng(77);
  std::normal_distribution<double> gauss;
  MatrixXd a(8, 8);
  for (int i = 0; i < 64; ++i) a(i / 8, i % 8) = gauss(rng);
  a /= a.norm();
  const VectorXd s = schmidt_coefficients(a);
  CHECK(s.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  for (int i = 1; i < s.size(); ++i) CHECK(s(i) <= s(i - 1) + 1e-15);

  // rank-1 state: trailing coefficients exactly zero after the clamp
  MatrixXd prod = random_unit_product(rng, 8);
  const VectorXd sp = schmidt_coefficients(prod);
  for (int i = 1; i < sp.size(); ++i) CHECK(sp(i) == 0.0);
  CHECK(entropy(prod) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("witness closed forms") {
  MatrixXd prod = MatrixXd::Zero(100, 100);
  prod(0, 0) = 1.0;
  CHECK(witness(prod, 100) == doctest::Approx(0.0).epsilon(1e-15));

  for (int n : {2, 5, 50}) {
    MatrixXd phi = MatrixXd::Zero(50, 50);
    for (int i = 0; i < n; ++i) phi(i, i) = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(witness(phi, n) == doctest::Approx(1.0 / n - 1.0).epsilon(1e-13));
  }

  MatrixXd bell = MatrixXd::Zero(100, 100);
  bell(0, 0) = bell(1, 1) = 1.0 / std::numbers::sqrt2;
  CHECK(witness(bell, 100) == doctest::Approx(-0.01).epsilon(1e-13));

  CHECK_THROWS_AS(witness(bell, 0), invalid_parameter);
  CHECK_THROWS_AS(witness(bell, 101), invalid_parameter);
}

TEST_CASE("witness is nonnegative on product states") {
  std::mt19937 rng(2);
  const int n = 16;
  for (int trial = 0; trial < 1000; ++trial) {
    const MatrixXd a = random_unit_product(rng, n);
    for (int n_w : {1, 2, 5, 16}) CHECK(witness(a, n_w) >= -1e-12);
  }
}

TEST_CASE("mode probabilities") {
  MatrixXd a = MatrixXd::Zero(6, 6);
  a(0, 0) = 1.0;
  VectorXd p = mode_probabilities(a);
  CHECK(p(0) == doctest::Approx(1.0));
  CHECK(p.tail(5).cwiseAbs().maxCoeff() == 0.0);

  MatrixXd bell = MatrixXd::Zero(6, 6);
  bell(0, 0) = bell(1, 1) = 1.0 / std::numbers::sqrt2;
  p = mode_probabilities(bell);
  CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-13));

  // product |n0 j>: indicator of n0, regardless of the second factor
  MatrixXd skew = MatrixXd::Zero(6, 6);
  skew.row(2) = VectorXd::LinSpaced(6, 0.3, 1.0).transpose();
  skew /= skew.norm();
  p = mode_probabilities(skew);
  CHECK(p(2) == doctest::Approx(1.0).epsilon(1e-13));

  std::mt19937 rng(8);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 25; ++trial) {
    MatrixXd r(7, 7);
    for (int i = 0; i < 49; ++i) r(i / 7, i % 7) = gauss(rng);
    r /= r.norm();
    const VectorXd q = mode_probabilities(r);
    CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.minCoeff() >= 0.0);
  }
}

TEST_CASE("position matrix against 1-D quadrature oracle") {
  const MatrixXd u = position_matrix(6);
  CHECK(u(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u(0, 1) == doctest::Approx(-16.0 / (9.0 * std::numbers::pi * std::numbers::pi))
                       .epsilon(1e-14));
  for (int i = 1; i <= 6; ++i)
    for (int k = 1; k <= 6; ++k) {
      auto f = [=](double x) {
        return 2.0 * x * std::sin(i * std::numbers::pi * x) * std::sin(k * std::numbers::pi * x);
      };
      const double want = oracle::integrate1d(f, 0.0, 1.0, 1e-13);
      CHECK(u(i - 1, k - 1) == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("position observables") {
  // product free ground state: means 1/2, covariance 0
  MatrixXd a = MatrixXd::Zero(8, 8);
  a(0, 0) = 1.0;
  const PositionObservables po = position_observables(a);
  CHECK(po.mean_u1 == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(po.mean_u2 == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(po.covariance) <= 1e-12);

  // any product state factorizes
  std::mt19937 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd p = random_unit_product(rng, 8);
    CHECK(std::abs(position_observables(p).covariance) <= 1e-12);
  }

  // Bell-type superposition of |11> and |22> correlates the positions
  MatrixXd bell = MatrixXd::Zero(8, 8);
  bell(0, 0) = bell(1, 1) = 1.0 / std::numbers::sqrt2;
  const PositionObservables pb = position_observables(bell);
  const double u12 = -16.0 / (9.0 * std::numbers::pi * std::numbers::pi);
  CHECK(pb.corr_u1u2 == doctest::Approx(0.25 + u12 * u12).epsilon(1e-12));
  CHECK(pb.covariance == doctest::Approx(u12 * u12).epsilon(1e-10));
}

TEST_CASE("wavefunction grid") {
  MatrixXd a = MatrixXd::Zero(4, 4);
  a(0, 0) = 1.0;
  const MatrixXd g = wavefunction_grid(a, 17);
  CHECK(g(8, 8) == doctest::Approx(2.0).epsilon(1e-13));  // 2 sin^2(pi/2) at the center
  CHECK(g.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.row(16).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.col(16).cwiseAbs().maxCoeff() == 0.0);

  // antisymmetric state vanishes on the diagonal; symmetric grid is its own
  // transpose
  MatrixXd anti = MatrixXd::Zero(4, 4);
  anti(0, 1) = 1.0 / std::numbers::sqrt2;
  anti(1, 0) = -anti(0, 1);
  const MatrixXd ga = wavefunction_grid(anti, 33);
  for (int i = 0; i < 33; ++i) CHECK(std::abs(ga(i, i)) <= 1e-14);
  CHECK((ga + ga.transpose()).cwiseAbs().maxCoeff() <= 1e-13);

  MatrixXd sym = MatrixXd::Zero(4, 4);
  sym(0, 1) = sym(1, 0) = 1.0 / std::numbers::sqrt2;
  const MatrixXd gs = wavefunction_grid(sym, 33);
  CHECK((gs - gs.transpose()).cwiseAbs().maxCoeff() <= 1e-13);

  CHECK_THROWS_AS(wavefunction_grid(a, 15), invalid_parameter);
}

TEST_CASE("entanglement report bundles the pieces consistently") {
  std::mt19937 rng(4);
  std::normal_distribution<double> gauss;
  MatrixXd a(10, 10);
  for (int i = 0; i < 100; ++i) a(i / 10, i % 10) = gauss(rng);
  a /= a.norm();
  const EntanglementReport r = entanglement_report(a, 10);
  CHECK(r.entropy == doctest::Approx(entropy(a)).epsilon(1e-14));
  CHECK(r.witness == doctest::Approx(witness(a, 10)).epsilon(1e-14));
  CHECK(r.schmidt.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.mode_probs.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.entropy >= 0.0);
  CHECK(r.entropy <= std::log(10.0) + 1e-12);
  CHECK(r.witness >= 1.0 / 10 - 1.0 - 1e-12);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfboost/direction.hpp"
#include "tfboost/errors.hpp"
#include "test_util.hpp"

using namespace tfboost;
constexpr double kPi = std::numbers::pi;

namespace {

Eigen::VectorXd random_in_box_angles(int d, Rng& rng, double margin = 1e-3) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd angles(d - 1);
  for (int l = 0; l < d - 1; ++l) {
    const double lo = angle_lower(l) + margin;
    const double hi = angle_upper(l) - margin;
    angles(l) = lo + (hi - lo) * unit(rng);
  }
  return angles;
}

}  // namespace

TEST_CASE("from_angles two dimensional cases") {
  const Direction east = from_angles(Eigen::VectorXd::Zero(1));
  CHECK(east.coeffs(0) == doctest::Approx(1.0));
  CHECK(east.coeffs(1) == doctest::Approx(0.0));

  const Direction diag = from_angles(Eigen::VectorXd::Constant(1, kPi / 4));
  CHECK(diag.coeffs(0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(diag.coeffs(1) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("from_angles yields unit norm in the box") {
  Rng rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const Direction dir = from_angles(random_in_box_angles(7, rng, 0.0));
    CHECK(std::abs(dir.coeffs.norm() - 1.0) < 1e-12);
    CHECK(dir.coeffs(0) >= -1e-15);
  }
}

TEST_CASE("from_angles rejects out-of-box angles") {
  Eigen::VectorXd angles = Eigen::VectorXd::Zero(3);
  angles(0) = kPi;  // beyond pi/2
  CHECK_THROWS_AS(from_angles(angles), ConstraintError);
  angles(0) = 0.0;
  angles(1) = -0.5;
  CHECK_THROWS_AS(from_angles(angles), ConstraintError);
}

TEST_CASE("to_angles degenerate tail and two dimensional case") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(5);
  e1(0) = 1.0;
  CHECK(to_angles(Direction(e1)).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd diag(2);
  diag << std::sqrt(0.5), std::sqrt(0.5);
  CHECK(to_angles(Direction(diag))(0) == doctest::Approx(kPi / 4));
}

TEST_CASE("angle chart roundtrips on canonical directions") {
  Rng rng(22);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Direction dir = sample_direction(7, rng);
    const Direction back = from_angles(to_angles(dir));
    worst = std::max(worst, (back.coeffs - dir.coeffs).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("angle chart roundtrips on the open box") {
  Rng rng(23);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Eigen::VectorXd angles = random_in_box_angles(6, rng);
    const Eigen::VectorXd back = to_angles(from_angles(angles));
    worst = std::max(worst, (back - angles).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("canonicalize") {
  Eigen::VectorXd v(2);
  v << -2.0, 0.0;
  CHECK(canonicalize(v).coeffs(0) == doctest::Approx(1.0));
  CHECK(canonicalize(v).coeffs(1) == doctest::Approx(0.0));

  v << 0.0, -3.0;  // first nonzero coordinate decides the sign
  CHECK(canonicalize(v).coeffs(1) == doctest::Approx(1.0));

  v << 3.0, 4.0;
  CHECK(canonicalize(v).coeffs(0) == doctest::Approx(0.6));
  CHECK(canonicalize(v).coeffs(1) == doctest::Approx(0.8));

  CHECK_THROWS_AS(canonicalize(Eigen::VectorXd::Zero(3)), DomainError);
}

TEST_CASE("sample_direction invariants and determinism") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const Direction dir = sample_direction(5, rng);
    CHECK(std::abs(dir.coeffs.norm() - 1.0) < 1e-12);
    CHECK(dir.coeffs(0) >= 0.0);
  }
  Rng a(77), b(77);
  for (int rep = 0; rep < 10; ++rep) {
    CHECK(sample_direction(4, a).coeffs == sample_direction(4, b).coeffs);
  }
}

TEST_CASE("half-sphere symmetry of the non-sign coordinate") {
  Rng rng(32);
  double mean = 0.0;
  const int n = 100000;
  for (int rep = 0; rep < n; ++rep) mean += sample_direction(3, rng).coeffs(1);
  mean /= n;
  CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("projection sign invariance") {
  Rng rng(33);
  const Eigen::VectorXd s = test::random_vector(7, rng);
  const Direction c = sample_direction(7, rng);
  const double plus = s.dot(c.coeffs);
  const double minus = s.dot((-c.coeffs).eval());
  CHECK(plus == -minus);
  const Direction again = canonicalize(-c.coeffs);
  CHECK((again.coeffs - c.coeffs).cwiseAbs().maxCoeff() == 0.0);
}

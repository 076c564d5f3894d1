#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfboost/errors.hpp"
#include "tfboost/grid.hpp"
#include "test_util.hpp"

using namespace tfboost;
constexpr double kPi = std::numbers::pi;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid{Eigen::VectorXd::Constant(1, 0.0)}, DomainError);
  Eigen::VectorXd bad(3);
  bad << 0.0, 1.0, 1.0;
  CHECK_THROWS_AS(Grid{bad}, DomainError);
  bad << 0.0, std::nan(""), 2.0;
  CHECK_THROWS_AS(Grid{bad}, DomainError);
  const Grid g = Grid::uniform(0.0, 1.0, 11);
  CHECK(g.a() == 0.0);
  CHECK(g.b() == 1.0);
  CHECK(g.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trapezoid_inner constant integrand") {
  const Grid g = Grid::uniform(0.0, 1.0, 101);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(101);
  CHECK(trapezoid_inner(g, ones, ones) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trapezoid_inner exact for linear integrand") {
  const Grid g = Grid::uniform(0.0, 1.0, 101);
  const Eigen::VectorXd f = g.points();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(101);
  CHECK(std::abs(trapezoid_inner(g, f, ones) - 0.5) < 1e-12);
}

TEST_CASE("trapezoid_inner sine/cosine orthogonality") {
  const Grid g = Grid::uniform(0.0, 1.0, 1001);
  Eigen::VectorXd f(1001), h(1001);
  for (int i = 0; i < 1001; ++i) {
    f(i) = std::sin(2 * kPi * g.points()(i));
    h(i) = std::cos(2 * kPi * g.points()(i));
  }
  CHECK(std::abs(trapezoid_inner(g, f, h)) < 1e-6);
}

TEST_CASE("trapezoid_inner symmetric and bilinear") {
  Rng rng(7);
  const Grid g = Grid::uniform(-1.0, 2.0, 40);
  const Eigen::VectorXd f = test::random_vector(40, rng);
  const Eigen::VectorXd h = test::random_vector(40, rng);
  const Eigen::VectorXd w = test::random_vector(40, rng);
  CHECK(trapezoid_inner(g, f, h) == doctest::Approx(trapezoid_inner(g, h, f)));
  const double lhs = trapezoid_inner(g, 2.0 * f + 3.0 * w, h);
  const double rhs = 2.0 * trapezoid_inner(g, f, h) + 3.0 * trapezoid_inner(g, w, h);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("trapezoid_inner length mismatch") {
  const Grid g = Grid::uniform(0.0, 1.0, 10);
  CHECK_THROWS_AS(trapezoid_inner(g, Eigen::VectorXd::Zero(9), Eigen::VectorXd::Zero(10)),
                  DimensionError);
}

TEST_CASE("resample_linear") {
  const Grid coarse = Grid::uniform(0.0, 1.0, 3);  // 0, 0.5, 1
  Eigen::VectorXd v(3);
  v << 0.0, 1.0, 0.0;
  const Grid fine = Grid::uniform(0.0, 1.0, 5);
  const Eigen::VectorXd r = resample_linear(coarse, v, fine);
  CHECK(r(0) == doctest::Approx(0.0));
  CHECK(r(1) == doctest::Approx(0.5));
  CHECK(r(2) == doctest::Approx(1.0));
  CHECK(r(4) == doctest::Approx(0.0));

  const Grid outside = Grid::uniform(-0.5, 1.0, 5);
  CHECK_THROWS_AS(resample_linear(coarse, v, outside), DomainError);
}

TEST_CASE("functional sample validation") {
  const Grid g = Grid::uniform(0.0, 1.0, 4);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(3, 4);
  CHECK_NOTHROW(FunctionalSample(g, values));
  CHECK_THROWS_AS(FunctionalSample(g, Eigen::MatrixXd::Zero(3, 5)), DimensionError);
  CHECK_THROWS_AS(FunctionalSample(g, values, Eigen::MatrixXd::Zero(2, 1)),
                  DimensionError);
  CHECK_THROWS_AS(FunctionalSample(g, values, Eigen::MatrixXd(),
                                   Eigen::VectorXd::Zero(2)),
                  DimensionError);
  values(1, 2) = std::nan("");
  CHECK_THROWS_AS(FunctionalSample(g, values), DomainError);
}

TEST_CASE("functional sample slice keeps alignment") {
  const Grid g = Grid::uniform(0.0, 1.0, 3);
  Rng rng(3);
  FunctionalSample s(g, test::random_matrix(6, 3, rng), test::random_matrix(6, 2, rng),
                     test::random_vector(6, rng));
  const FunctionalSample part = s.slice(2, 3);
  CHECK(part.n() == 3);
  CHECK(part.values.row(0) == s.values.row(2));
  CHECK(part.scalars.row(2) == s.scalars.row(4));
  CHECK((*part.response)(1) == (*s.response)(3));
}

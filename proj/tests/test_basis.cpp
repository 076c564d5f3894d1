#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfboost/basis.hpp"
#include "tfboost/errors.hpp"
#include "test_util.hpp"

using namespace tfboost;

namespace {

double gram_deviation(const BasisSystem& sys) {
  double worst = 0.0;
  for (int a = 0; a < sys.d(); ++a) {
    for (int b = 0; b < sys.d(); ++b) {
      const double inner = trapezoid_inner(sys.grid, sys.ortho.row(a), sys.ortho.row(b));
      worst = std::max(worst, std::abs(inner - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("seven cubic functions from three interior knots") {
  const BasisSystem sys = build_basis(-1.0, 1.0, 3, 3, 401);
  CHECK(sys.d() == 7);
  CHECK(sys.interior_knots.size() == 3);
  CHECK(sys.interior_knots(0) == doctest::Approx(-0.5));
  CHECK(sys.interior_knots(2) == doctest::Approx(0.5));
  CHECK(gram_deviation(sys) < 1e-6);
}

TEST_CASE("two-function linear case") {
  const BasisSystem sys = build_basis(0.0, 1.0, 0, 1, 101);
  CHECK(sys.d() == 2);
  CHECK(gram_deviation(sys) < 1e-6);
  // raw hat functions: Gram [[1/3,1/6],[1/6,1/3]] under exact integration
  const double g00 = trapezoid_inner(sys.grid, sys.raw.row(0), sys.raw.row(0));
  CHECK(g00 == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("orthonormality across configurations") {
  for (const auto& [a, b, kn, deg] :
       {std::tuple{0.0, 1.0, 3, 3}, {-1.0, 1.0, 5, 3}, {2.0, 7.0, 2, 2},
        {0.0, 0.5, 0, 3}}) {
    const BasisSystem sys = build_basis(a, b, kn, deg, 600);
    CAPTURE(kn);
    CHECK(gram_deviation(sys) < 1e-6);
  }
}

TEST_CASE("raw basis partitions unity") {
  const BasisSystem sys = build_basis(-1.0, 1.0, 3, 3, 401);
  const Eigen::VectorXd colsum = sys.raw.colwise().sum();
  for (int j = 0; j < sys.grid.size(); ++j) {
    CHECK(colsum(j) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("spline derivatives match finite differences") {
  const BSplineBasis spline(-1.0, 1.0, 3, 3);
  const double h = 1e-6;
  for (double t : {-0.83, -0.2, 0.31, 0.77}) {
    const Eigen::MatrixXd ders = spline.eval_derivatives(t, 2);
    const Eigen::VectorXd up = spline.eval(t + h);
    const Eigen::VectorXd down = spline.eval(t - h);
    for (int j = 0; j < spline.size(); ++j) {
      const double fd1 = (up(j) - down(j)) / (2 * h);
      const double fd2 = (up(j) - 2 * ders(0, j) + down(j)) / (h * h);
      CHECK(ders(1, j) == doctest::Approx(fd1).epsilon(1e-5));
      CHECK(ders(2, j) == doctest::Approx(fd2).epsilon(1e-3));
    }
  }
}

TEST_CASE("build_basis rejects bad inputs") {
  CHECK_THROWS_AS(build_basis(1.0, 1.0, 3, 3, 401), DomainError);
  CHECK_THROWS_AS(build_basis(0.0, 1.0, 3, 3, 30), DomainError);  // m_q < 10 d
}

TEST_CASE("project_scores of the zero curve") {
  const BasisSystem sys = build_basis(0.0, 1.0, 3, 3, 401);
  const FunctionalSample zero(Grid::uniform(0.0, 1.0, 100),
                              Eigen::MatrixXd::Zero(2, 100));
  CHECK(project_scores(zero, sys).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projecting a basis function recovers a unit vector") {
  const BasisSystem sys = build_basis(0.0, 1.0, 3, 3, 401);
  FunctionalSample curve(sys.grid, sys.ortho.row(1));
  const Eigen::MatrixXd scores = project_scores(curve, sys);
  for (int l = 0; l < sys.d(); ++l) {
    CHECK(scores(0, l) == doctest::Approx(l == 1 ? 1.0 : 0.0).epsilon(1e-6));
  }
}

TEST_CASE("project_scores equals the per-curve quadrature loop") {
  Rng rng(11);
  const BasisSystem sys = build_basis(-1.0, 1.0, 3, 3, 401);
  const Grid obs = Grid::uniform(-1.0, 1.0, 100);
  const FunctionalSample sample(obs, test::random_matrix(3, 100, rng));
  const Eigen::MatrixXd scores = project_scores(sample, sys);
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd xq = resample_linear(obs, sample.values.row(i), sys.grid);
    for (int l = 0; l < sys.d(); ++l) {
      const double direct = trapezoid_inner(sys.grid, xq, sys.ortho.row(l));
      CHECK(scores(i, l) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection is linear in the curve") {
  Rng rng(13);
  const BasisSystem sys = build_basis(0.0, 1.0, 3, 3, 401);
  const Grid obs = Grid::uniform(0.0, 1.0, 80);
  const Eigen::MatrixXd x = test::random_matrix(1, 80, rng);
  const Eigen::MatrixXd z = test::random_matrix(1, 80, rng);
  const double alpha = 0.7, beta = -2.3;
  const Eigen::MatrixXd lhs =
      project_scores(FunctionalSample(obs, alpha * x + beta * z), sys);
  const Eigen::MatrixXd rhs = alpha * project_scores(FunctionalSample(obs, x), sys) +
                              beta * project_scores(FunctionalSample(obs, z), sys);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("sample grid outside the basis interval") {
  const BasisSystem sys = build_basis(0.0, 1.0, 3, 3, 401);
  const FunctionalSample wide(Grid::uniform(-0.2, 1.0, 50), Eigen::MatrixXd::Zero(1, 50));
  CHECK_THROWS_AS(project_scores(wide, sys), DomainError);
}

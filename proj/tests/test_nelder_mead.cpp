#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfboost/errors.hpp"
#include "tfboost/nelder_mead.hpp"

using namespace tfboost;

namespace {

Box square_box(double lo, double hi, int dim) {
  return Box(Eigen::VectorXd::Constant(dim, lo), Eigen::VectorXd::Constant(dim, hi));
}

const Objective quadratic = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };

}  // namespace

TEST_CASE("convex quadratic reaches the origin") {
  Eigen::VectorXd start(2);
  start << 0.3, 0.3;
  const NmResult r = nelder_mead(quadratic, start, square_box(-1.0, 1.0, 2), NmConfig{});
  CHECK(r.argmin.cwiseAbs().maxCoeff() < 1e-4);
  CHECK(r.value <= quadratic(start));
}

TEST_CASE("boundary optimum clips to the box edge") {
  const Objective f = [](const Eigen::VectorXd& x) { return (x(0) - 2.0) * (x(0) - 2.0); };
  const NmResult r = nelder_mead(f, Eigen::VectorXd::Zero(1), square_box(-1.0, 1.0, 1),
                                 NmConfig{});
  CHECK(r.argmin(0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rosenbrock long run") {
  const Objective rosen = [](const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
  };
  Eigen::VectorXd start(2);
  start << -1.2, 1.0;
  NmConfig cfg;
  cfg.max_iter = 2000;
  const NmResult r = nelder_mead(rosen, start, square_box(-2.0, 2.0, 2), cfg);
  CHECK(r.value < 1e-3);
}

TEST_CASE("result stays inside the box and below the start") {
  Rng rng(3);
  std::uniform_real_distribution<double> unif(-0.9, 0.9);
  const Objective bumpy = [](const Eigen::VectorXd& x) {
    return std::sin(5 * x(0)) + x.squaredNorm();
  };
  const Box box = square_box(-1.0, 1.0, 2);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd start(2);
    start << unif(rng), unif(rng);
    const NmResult r = nelder_mead(bumpy, start, box, NmConfig{});
    CHECK(box.contains(r.argmin));
    CHECK(r.value <= bumpy(start));
  }
}

TEST_CASE("start validation") {
  CHECK_THROWS_AS(nelder_mead(quadratic, Eigen::VectorXd::Constant(2, 3.0),
                              square_box(-1.0, 1.0, 2), NmConfig{}),
                  DomainError);
  const Objective bad = [](const Eigen::VectorXd&) { return std::nan(""); };
  CHECK_THROWS_AS(nelder_mead(bad, Eigen::VectorXd::Zero(2), square_box(-1, 1, 2),
                              NmConfig{}),
                  DomainError);
}

TEST_CASE("multi_start on a convex objective matches single start") {
  Rng rng(5);
  MultiStartConfig cfg;
  const NmResult multi = multi_start(quadratic, square_box(-1.0, 1.0, 2), cfg, rng);
  CHECK(multi.argmin.cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("multi_start finds the deeper basin of a tilted double well") {
  // minima near +-1; the tilt makes the left one deeper (checked by grid search)
  const Objective well = [](const Eigen::VectorXd& x) {
    const double u = x(0);
    return std::pow(u * u - 1.0, 2) + 0.2 * u;
  };
  const Box box = square_box(-2.0, 2.0, 1);
  double grid_best = 1e300, grid_arg = 0.0;
  for (int i = 0; i <= 40000; ++i) {
    const double u = -2.0 + 4.0 * i / 40000.0;
    const double v = well(Eigen::VectorXd::Constant(1, u));
    if (v < grid_best) {
      grid_best = v;
      grid_arg = u;
    }
  }
  REQUIRE(grid_arg < 0.0);

  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    const NmResult r = multi_start(well, box, MultiStartConfig{}, rng);
    if (std::abs(r.argmin(0) - grid_arg) < 1e-3) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("multi_start with one start and full probe budget reduces to nelder_mead") {
  MultiStartConfig cfg;
  cfg.n_starts = 1;
  cfg.n_survivors = 1;
  cfg.nm.max_iter = 300;
  cfg.probe_steps = 300;
  Rng rng_a(9);
  const NmResult multi = multi_start(quadratic, square_box(-1.0, 1.0, 2), cfg, rng_a);

  Rng rng_b(9);  // reproduce the sampled start
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd start(2);
  for (int i = 0; i < 2; ++i) start(i) = -1.0 + 2.0 * unit(rng_b);
  NmConfig nm;
  nm.max_iter = 300;
  const NmResult single = nelder_mead(quadratic, start, square_box(-1.0, 1.0, 2), nm);
  CHECK(multi.value == single.value);
  CHECK(multi.argmin == single.argmin);
}

TEST_CASE("multi_start value never exceeds the sampled start values") {
  const Objective bumpy = [](const Eigen::VectorXd& x) {
    return std::cos(3 * x(0)) * std::sin(2 * x(1)) + 0.1 * x.squaredNorm();
  };
  const Box box = square_box(-3.0, 3.0, 2);
  Rng rng(11);
  Rng replay(11);
  MultiStartConfig cfg;
  const NmResult r = multi_start(bumpy, box, cfg, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < cfg.n_starts; ++s) {
    Eigen::VectorXd start(2);
    for (int i = 0; i < 2; ++i) start(i) = -3.0 + 6.0 * unit(replay);
    CHECK(r.value <= bumpy(start) + 1e-12);
  }
}

TEST_CASE("deterministic under a fixed seed") {
  const Objective bumpy = [](const Eigen::VectorXd& x) {
    return std::sin(4 * x(0)) + x.squaredNorm();
  };
  Rng a(4), b(4);
  const NmResult ra = multi_start(bumpy, square_box(-2, 2, 2), MultiStartConfig{}, a);
  const NmResult rb = multi_start(bumpy, square_box(-2, 2, 2), MultiStartConfig{}, b);
  CHECK(ra.value == rb.value);
  CHECK(ra.argmin == rb.argmin);
}

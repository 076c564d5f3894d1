#include "tfboost/grid.hpp"

#include <cmath>
#include <string>

#include "tfboost/errors.hpp"

namespace tfboost {

Grid::Grid(Eigen::VectorXd points) : points_(std::move(points)) {
  const auto m = points_.size();
  if (m < 2) throw DomainError("grid needs at least 2 points, got " + std::to_string(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!std::isfinite(points_(i))) throw DomainError("grid point is not finite");
    if (i > 0 && points_(i) <= points_(i - 1)) {
      throw DomainError("grid points must be strictly increasing (index " +
                        std::to_string(i) + ")");
    }
  }
  weights_.resize(m);
  weights_(0) = (points_(1) - points_(0)) / 2.0;
  weights_(m - 1) = (points_(m - 1) - points_(m - 2)) / 2.0;
  for (Eigen::Index i = 1; i + 1 < m; ++i) {
    weights_(i) = (points_(i + 1) - points_(i - 1)) / 2.0;
  }
}

Grid Grid::uniform(double a, double b, int m) {
  if (!(a < b)) throw DomainError("degenerate interval for uniform grid");
  Eigen::VectorXd p(m);
  for (int i = 0; i < m; ++i) p(i) = a + (b - a) * i / (m - 1);
  p(m - 1) = b;
  return Grid(std::move(p));
}

double trapezoid_inner(const Grid& grid, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& g) {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw DimensionError("trapezoid_inner: vector length " + std::to_string(f.size()) +
                         "/" + std::to_string(g.size()) + " does not match grid size " +
                         std::to_string(grid.size()));
  }
  return (grid.weights().array() * f.array() * g.array()).sum();
}

Eigen::VectorXd resample_linear(const Grid& from, const Eigen::VectorXd& values,
                                const Grid& to) {
  if (values.size() != from.size()) {
    throw DimensionError("resample_linear: values do not match source grid");
  }
  const double slack = 1e-9 * (from.b() - from.a());
  Eigen::VectorXd out(to.size());
  const auto& s = from.points();
  Eigen::Index k = 0;
  for (int i = 0; i < to.size(); ++i) {
    double t = to.points()(i);
    if (t < from.a() - slack || t > from.b() + slack) {
      throw DomainError("resample_linear: target point outside source range, "
                        "extrapolation forbidden");
    }
    t = std::min(std::max(t, from.a()), from.b());
    while (k + 2 < s.size() && s(k + 1) < t) ++k;
    const double w = (t - s(k)) / (s(k + 1) - s(k));
    out(i) = (1.0 - w) * values(k) + w * values(k + 1);
  }
  return out;
}

FunctionalSample::FunctionalSample(Grid grid_in, Eigen::MatrixXd values_in,
                                   Eigen::MatrixXd scalars_in,
                                   std::optional<Eigen::VectorXd> response_in)
    : grid(std::move(grid_in)),
      values(std::move(values_in)),
      scalars(std::move(scalars_in)),
      response(std::move(response_in)) {
  if (values.cols() != grid.size()) {
    throw DimensionError("sample values have " + std::to_string(values.cols()) +
                         " columns but grid has " + std::to_string(grid.size()) +
                         " points");
  }
  const auto n = values.rows();
  if (scalars.size() == 0) scalars.resize(n, 0);
  if (scalars.rows() != n) throw DimensionError("scalar covariate row count mismatch");
  if (response && response->size() != n) throw DimensionError("response length mismatch");
  if (!values.allFinite() || !scalars.allFinite() ||
      (response && !response->allFinite())) {
    throw DomainError("sample contains non-finite entries");
  }
}

FunctionalSample FunctionalSample::slice(int begin, int count) const {
  std::optional<Eigen::VectorXd> r;
  if (response) r = response->segment(begin, count);
  return FunctionalSample(grid, values.middleRows(begin, count),
                          scalars.middleRows(begin, count), std::move(r));
}

}  // namespace tfboost

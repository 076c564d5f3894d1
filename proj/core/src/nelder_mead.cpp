#include "tfboost/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tfboost/errors.hpp"

namespace tfboost {

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw DimensionError("Box: bound length mismatch");
  }
  if (((upper - lower).array() <= 0.0).any()) {
    throw DomainError("Box: lower must be strictly below upper");
  }
}

Eigen::VectorXd Box::clip(Eigen::VectorXd x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

bool Box::contains(const Eigen::VectorXd& x) const {
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

void NmConfig::validate() const {
  if (reflection <= 0 || expansion <= 0 || contraction <= 0 || shrink <= 0) {
    throw DomainError("NmConfig: coefficients must be positive");
  }
  if (expansion <= 1.0) throw DomainError("NmConfig: expansion must exceed 1");
}

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> fx;

  void order() {
    const int k = static_cast<int>(x.size());
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return fx[a] < fx[b]; });
    std::vector<Eigen::VectorXd> x2(k);
    std::vector<double> f2(k);
    for (int i = 0; i < k; ++i) {
      x2[i] = std::move(x[idx[i]]);
      f2[i] = fx[idx[i]];
    }
    x = std::move(x2);
    fx = std::move(f2);
  }

  bool converged(double f_tol, double x_tol) const {
    const double spread = std::abs(fx.back() - fx.front());
    const double scale = std::abs(fx.back()) + std::abs(fx.front()) + 1e-300;
    if (2.0 * spread / scale > f_tol) return false;
    for (std::size_t i = 1; i < x.size(); ++i) {
      if ((x[i] - x[0]).cwiseAbs().maxCoeff() > x_tol) return false;
    }
    return true;
  }
};

}  // namespace

NmResult nelder_mead(const Objective& f, const Eigen::VectorXd& start, const Box& box,
                     const NmConfig& cfg) {
  cfg.validate();
  const int dim = box.dim();
  if (start.size() != dim) throw DimensionError("nelder_mead: start dimension mismatch");
  if (!box.contains(start)) throw DomainError("nelder_mead: start outside box");

  const double f0 = f(start);
  if (!std::isfinite(f0)) throw DomainError("nelder_mead: objective not finite at start");

  Simplex s;
  s.x.reserve(dim + 1);
  s.x.push_back(start);
  s.fx.push_back(f0);
  // Initial simplex: perturb each axis by 5% of the box width, clipped. A
  // vertex that clips back onto the start gets pushed the other way.
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd v = start;
    const double step = 0.05 * (box.upper(i) - box.lower(i));
    v(i) = (start(i) + step <= box.upper(i)) ? start(i) + step : start(i) - step;
    s.x.push_back(box.clip(std::move(v)));
    s.fx.push_back(f(s.x.back()));
  }

  const int max_iter = cfg.iterations_for(dim);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    s.order();
    if (s.converged(cfg.f_tol, cfg.x_tol)) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += s.x[i];
    centroid /= dim;

    const Eigen::VectorXd& worst = s.x[dim];
    const double f_best = s.fx[0];
    const double f_second = s.fx[dim - 1];
    const double f_worst = s.fx[dim];

    Eigen::VectorXd xr = box.clip(centroid + cfg.reflection * (centroid - worst));
    const double fr = f(xr);

    if (fr < f_best) {
      Eigen::VectorXd xe = box.clip(centroid + cfg.expansion * (xr - centroid));
      const double fe = f(xe);
      if (fe < fr) {
        s.x[dim] = std::move(xe);
        s.fx[dim] = fe;
      } else {
        s.x[dim] = std::move(xr);
        s.fx[dim] = fr;
      }
      continue;
    }
    if (fr < f_second) {
      s.x[dim] = std::move(xr);
      s.fx[dim] = fr;
      continue;
    }

    if (fr < f_worst) {  // outside contraction
      Eigen::VectorXd xc = box.clip(centroid + cfg.contraction * (xr - centroid));
      const double fc = f(xc);
      if (fc <= fr) {
        s.x[dim] = std::move(xc);
        s.fx[dim] = fc;
        continue;
      }
    } else {  // inside contraction
      Eigen::VectorXd xc = box.clip(centroid - cfg.contraction * (centroid - worst));
      const double fc = f(xc);
      if (fc < f_worst) {
        s.x[dim] = std::move(xc);
        s.fx[dim] = fc;
        continue;
      }
    }

    for (int i = 1; i <= dim; ++i) {
      s.x[i] = box.clip(s.x[0] + cfg.shrink * (s.x[i] - s.x[0]));
      s.fx[i] = f(s.x[i]);
    }
  }

  s.order();
  return NmResult{s.x[0], s.fx[0], iter};
}

NmResult multi_start(const Objective& f, const Box& box, const MultiStartConfig& cfg,
                     Rng& rng) {
  if (cfg.n_starts < 1 || cfg.probe_steps < 1 || cfg.n_survivors < 1) {
    throw DomainError("multi_start: counts must be positive");
  }
  const int dim = box.dim();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Eigen::VectorXd> starts(cfg.n_starts);
  for (auto& s : starts) {
    s.resize(dim);
    for (int i = 0; i < dim; ++i) {
      s(i) = box.lower(i) + (box.upper(i) - box.lower(i)) * unit(rng);
    }
  }

  NmConfig probe_cfg = cfg.nm;
  probe_cfg.max_iter = cfg.probe_steps;
  std::vector<NmResult> probes(cfg.n_starts);
  for (int i = 0; i < cfg.n_starts; ++i) probes[i] = nelder_mead(f, starts[i], box, probe_cfg);

  std::vector<int> rank(cfg.n_starts);
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(),
                   [&](int a, int b) { return probes[a].value < probes[b].value; });

  NmResult best = probes[rank[0]];
  const int full_budget = cfg.nm.iterations_for(dim);
  const bool probe_exhausted_budget = cfg.probe_steps >= full_budget;
  const int survivors = std::min(cfg.n_survivors, cfg.n_starts);
  if (!probe_exhausted_budget) {
    for (int k = 0; k < survivors; ++k) {
      NmResult run = nelder_mead(f, probes[rank[k]].argmin, box, cfg.nm);
      if (run.value < best.value) best = std::move(run);
    }
  }
  return best;
}

}  // namespace tfboost

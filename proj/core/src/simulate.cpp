#include "tfboost/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kM2SolveGrid = 401;

std::uint64_t setting_tag(const SimSetting& s) {
  return derive_seed(0x5e77, {static_cast<std::uint64_t>(s.predictor),
                              static_cast<std::uint64_t>(s.regression),
                              static_cast<std::uint64_t>(std::llround(s.snr * 1000))});
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double xlogabs(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)); }

int method_index(Method m) { return static_cast<int>(m); }

}  // namespace

void SimSetting::validate() const {
  if (n_train < 1 || n_valid < 1 || n_test < 1 || grid_size < 2) {
    throw DomainError("SimSetting: sizes must be positive");
  }
  if (!(snr > 0.0)) throw DomainError("SimSetting: snr must be positive");
}

std::string SimSetting::name() const {
  std::ostringstream ss;
  ss << "r" << static_cast<int>(regression) + 1 << ","
     << (predictor == PredictorModel::M1 ? "M1" : "M2") << ",snr";
  if (snr == std::floor(snr)) ss << static_cast<long long>(snr);
  else ss << snr;
  return ss.str();
}

SimSetting SimSetting::parse(const std::string& text) {
  SimSetting s;
  bool saw_r = false, saw_m = false, saw_snr = false;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "M1") {
      s.predictor = PredictorModel::M1;
      saw_m = true;
    } else if (token == "M2") {
      s.predictor = PredictorModel::M2;
      saw_m = true;
    } else if (token.size() == 2 && token[0] == 'r' && token[1] >= '1' && token[1] <= '5') {
      s.regression = static_cast<RegressionFunction>(token[1] - '1');
      saw_r = true;
    } else if (token.rfind("snr", 0) == 0) {
      try {
        s.snr = std::stod(token.substr(3));
      } catch (const std::exception&) {
        throw ConfigError("cannot parse snr in setting '" + text + "'");
      }
      saw_snr = true;
    } else {
      throw ConfigError("unknown setting token '" + token + "' in '" + text +
                        "' (expected r1..r5, M1/M2, snr<value>)");
    }
  }
  if (!saw_r || !saw_m || !saw_snr) {
    throw ConfigError("setting '" + text + "' must name a regression, a predictor "
                      "model, and an snr, e.g. r1,M2,snr20");
  }
  s.validate();
  return s;
}

FunctionalSample gen_m1(int n, const Grid& grid, Rng& rng) {
  if (n < 1) throw DomainError("gen_m1: n must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd values(n, grid.size());
  for (int i = 0; i < n; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    const double c = 2.0 * unit(rng) - 1.0;
    const double d = 2.0 * kPi * (2.0 * unit(rng) - 1.0);
    for (int j = 0; j < grid.size(); ++j) {
      const double t = grid.points()(j);
      values(i, j) = a + b * t * t + c * std::exp(t) + std::sin(d * t);
    }
  }
  return FunctionalSample(grid, std::move(values));
}

Eigen::VectorXd m2_mean(const Grid& grid) {
  Eigen::VectorXd mu(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double t = grid.points()(j);
    mu(j) = 2.0 * std::sin(t * kPi) * std::exp(1.0 - t);
  }
  return mu;
}

M2Process make_m2_process(const Grid& grid, const MaternSpec& spec) {
  const MaternEigen eig = matern_eigen(spec, Grid::uniform(0.0, 1.0, kM2SolveGrid));
  Eigen::VectorXd lambda(4);
  lambda << 0.8, 0.3, 0.2, 0.1;
  return M2Process{grid, m2_mean(grid), interpolate_eigenfunctions(eig, grid),
                   std::move(lambda)};
}

FunctionalSample compose_m2(const M2Process& process, const Eigen::MatrixXd& xi) {
  if (xi.cols() != 4) throw DimensionError("compose_m2: xi needs 4 columns");
  const Eigen::MatrixXd values =
      (xi * process.lambda.cwiseSqrt().asDiagonal() * process.phi).rowwise() +
      process.mean.transpose();
  return FunctionalSample(process.grid, values);
}

FunctionalSample gen_m2(int n, const M2Process& process, Rng& rng) {
  if (n < 1) throw DomainError("gen_m2: n must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd xi(n, 4);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 4; ++j) xi(i, j) = gauss(rng);
  }
  return compose_m2(process, xi);
}

FunctionalSample gen_m2(int n, const Grid& grid, const MaternSpec& spec, Rng& rng) {
  return gen_m2(n, make_m2_process(grid, spec), rng);
}

double trapezoid_clipped(const Grid& grid, const Eigen::VectorXd& values, double lo,
                         double hi) {
  if (values.size() != grid.size()) {
    throw DimensionError("trapezoid_clipped: values do not match grid");
  }
  if (!(lo < hi)) return 0.0;
  double total = 0.0;
  for (int k = 0; k + 1 < grid.size(); ++k) {
    const double a = grid.points()(k), b = grid.points()(k + 1);
    const double c = std::max(a, lo), d = std::min(b, hi);
    if (!(c < d)) continue;
    const double fa = values(k), fb = values(k + 1);
    const double fc = fa + (fb - fa) * (c - a) / (b - a);
    const double fd = fa + (fb - fa) * (d - a) / (b - a);
    total += (d - c) * (fc + fd) / 2.0;
  }
  return total;
}

Eigen::VectorXd apply_regression(const FunctionalSample& sample, RegressionFunction which,
                                 const std::optional<FpcaResult>& fpca_ref) {
  const Grid& grid = sample.grid;
  const int n = sample.n();
  Eigen::VectorXd out(n);

  switch (which) {
    case RegressionFunction::R1: {
      if (!fpca_ref || fpca_ref->p() < 2) {
        throw DomainError("apply_regression: r1 needs a reference with 2 eigenfunctions");
      }
      if (fpca_ref->grid.size() != grid.size()) {
        throw DimensionError("apply_regression: r1 reference grid mismatch");
      }
      const Eigen::VectorXd w =
          fpca_ref->eigenfunctions.row(0) + fpca_ref->eigenfunctions.row(1);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd centered =
            sample.values.row(i).transpose() - fpca_ref->mean;
        out(i) = std::cbrt(trapezoid_inner(grid, centered, w));
      }
      return out;
    }
    case RegressionFunction::R2: {
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd integrand(grid.size());
        for (int j = 0; j < grid.size(); ++j) integrand(j) = xlogabs(sample.values(i, j));
        out(i) = 5.0 * std::exp(-0.5 * std::abs(grid.weights().dot(integrand)));
      }
      return out;
    }
    case RegressionFunction::R3: {
      Eigen::VectorXd sin_t(grid.size());
      for (int j = 0; j < grid.size(); ++j) sin_t(j) = std::sin(2.0 * kPi * grid.points()(j));
      for (int i = 0; i < n; ++i) {
        const double v =
            (grid.weights().array() * sample.values.row(i).transpose().array().square() *
             sin_t.array()).sum();
        out(i) = 5.0 * logistic(2.0 * v);
      }
      return out;
    }
    case RegressionFunction::R4: {
      // Halves of the domain split at its midpoint: [-1,0]/(0,1] for the M1
      // interval, [0,0.5]/(0.5,1] for M2.
      const double mid = (grid.a() + grid.b()) / 2.0;
      Eigen::VectorXd cos_t(grid.size());
      for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.points()(j);
        cos_t(j) = std::cos(2.0 * kPi * t * t);
      }
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd first = cos_t.cwiseProduct(sample.values.row(i).transpose());
        Eigen::VectorXd second(grid.size());
        for (int j = 0; j < grid.size(); ++j) second(j) = std::sin(sample.values(i, j));
        const double i1 = trapezoid_clipped(grid, first, grid.a(), mid);
        const double i2 = trapezoid_clipped(grid, second, mid, grid.b());
        out(i) = 5.0 * (std::sqrt(std::abs(i1)) + std::sqrt(std::abs(i2)));
      }
      return out;
    }
    case RegressionFunction::R5: {
      Eigen::VectorXd w(grid.size());
      for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.points()(j);
        w(j) = std::sin(1.5 * kPi * t) + std::sin(0.5 * kPi * t);
      }
      for (int i = 0; i < n; ++i) {
        out(i) = trapezoid_inner(grid, sample.values.row(i), w);
      }
      return out;
    }
  }
  throw DomainError("apply_regression: unknown regression function");
}

double calibrate_noise(const Eigen::VectorXd& noiseless, double snr) {
  if (!(snr > 0.0)) throw DomainError("calibrate_noise: snr must be positive");
  if (noiseless.size() < 2) throw DomainError("calibrate_noise: need at least 2 values");
  const double mean = noiseless.mean();
  const double var =
      (noiseless.array() - mean).square().sum() / (noiseless.size() - 1);
  if (!(var > 0.0)) throw DomainError("calibrate_noise: signal has zero variance");
  return std::sqrt(var / snr);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::TFBoostB: return "tfboost-b";
    case Method::TFBoostA1: return "tfboost-a1";
    case Method::TFBoostA2: return "tfboost-a2";
    case Method::TFBoostA3: return "tfboost-a3";
    case Method::Flm1: return "flm1";
    case Method::Flm2: return "flm2";
    case Method::MeanOnly: return "mean";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::TFBoostB, Method::TFBoostA1, Method::TFBoostA2,
                   Method::TFBoostA3, Method::Flm1, Method::Flm2, Method::MeanOnly}) {
    if (method_name(m) == name) return m;
  }
  std::string valid;
  for (const auto& v : valid_method_names()) valid += (valid.empty() ? "" : ", ") + v;
  throw ConfigError("unknown method '" + name + "', valid names: " + valid);
}

std::vector<std::string> valid_method_names() {
  return {"tfboost-b", "tfboost-a1", "tfboost-a2", "tfboost-a3", "flm1", "flm2", "mean"};
}

FunctionalSample SettingEngine::generate(int n, Rng& curve_rng, Rng& noise_rng) const {
  FunctionalSample curves = setting.predictor == PredictorModel::M1
      ? gen_m1(n, grid, curve_rng)
      : gen_m2(n, *m2, curve_rng);
  Eigen::VectorXd y = signal(curves);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n; ++i) y(i) += rho * gauss(noise_rng);
  curves.response = std::move(y);
  return curves;
}

Eigen::VectorXd SettingEngine::signal(const FunctionalSample& curves) const {
  return apply_regression(curves, setting.regression, r1_ref);
}

SettingEngine prepare_setting(const SimSetting& setting, const RunOptions& opts) {
  setting.validate();
  SettingEngine engine{setting,
                       Grid::uniform(setting.interval_a(), setting.interval_b(),
                                     setting.grid_size),
                       std::nullopt, std::nullopt, 0.0};
  const std::uint64_t tag = setting_tag(setting);

  if (setting.predictor == PredictorModel::M2) {
    engine.m2 = make_m2_process(engine.grid);
    if (setting.regression == RegressionFunction::R1) {
      // True process pieces: the printed mean and the Matern eigenfunction
      // shapes are the exact FPCs of the generating model.
      engine.r1_ref = FpcaResult{engine.grid, engine.m2->mean,
                                 engine.m2->phi.topRows(2),
                                 engine.m2->lambda.head(2), Eigen::MatrixXd()};
    }
  } else if (setting.regression == RegressionFunction::R1) {
    Rng ref_rng = make_rng(setting.seed,
                           {tag, static_cast<std::uint64_t>(Stream::kReferenceFpca)});
    const FunctionalSample ref_sample =
        gen_m1(opts.reference_fpca_size, engine.grid, ref_rng);
    engine.r1_ref = fpca(ref_sample, 2);
  }

  Rng cal_rng = make_rng(setting.seed,
                         {tag, static_cast<std::uint64_t>(Stream::kCalibration)});
  const FunctionalSample cal = setting.predictor == PredictorModel::M1
      ? gen_m1(opts.calibration_size, engine.grid, cal_rng)
      : gen_m2(opts.calibration_size, *engine.m2, cal_rng);
  engine.rho = calibrate_noise(engine.signal(cal), setting.snr);
  return engine;
}

namespace {

double run_tfboost(Method method, const FunctionalSample& train,
                   const FunctionalSample& valid, const FunctionalSample& test,
                   const BasisSystem& basis, const RunOptions& opts,
                   std::uint64_t seed_base) {
  BoostConfig cfg;
  cfg.gamma = opts.gamma;
  cfg.t_max = opts.t_max;
  cfg.tree.min_node = opts.min_node;
  cfg.opt = opts.opt;
  switch (method) {
    case Method::TFBoostB:
      cfg.learner = {LearnerKind::TypeB, 1, opts.pool_size};
      break;
    case Method::TFBoostA1:
      cfg.learner = {LearnerKind::TypeA, 1, 0};
      break;
    case Method::TFBoostA2:
      cfg.learner = {LearnerKind::TypeA, 2, 0};
      break;
    case Method::TFBoostA3:
      cfg.learner = {LearnerKind::TypeA, 3, 0};
      break;
    default:
      throw DomainError("run_tfboost: not a boosting method");
  }

  std::optional<BoostModel> best;
  for (int depth : opts.depth_grid) {
    cfg.tree.max_depth = depth;
    cfg.seed = derive_seed(seed_base, {static_cast<std::uint64_t>(depth)});
    BoostModel model = fit_boost(train, valid, basis, cfg);
    if (!best || model.valid_trace[model.t_stop] < best->valid_trace[best->t_stop]) {
      best = std::move(model);
    }
  }
  return mspe(*best, test);
}

double run_method(Method method, const FunctionalSample& train,
                  const FunctionalSample& valid, const FunctionalSample& test,
                  const BasisSystem& basis, const RunOptions& opts,
                  std::uint64_t seed_base) {
  switch (method) {
    case Method::Flm1: {
      const FlmModel model = fit_flm1(train, valid, basis, opts.lambda_grid);
      return mspe_flm(model, test);
    }
    case Method::Flm2: {
      const FlmModel model = fit_flm2(train);
      return mspe_flm(model, test);
    }
    case Method::MeanOnly: {
      const double f0 = train.response->mean();
      return (test.response->array() - f0).square().sum() / test.n();
    }
    default:
      return run_tfboost(method, train, valid, test, basis, opts, seed_base);
  }
}

}  // namespace

RunResults run_setting(const SimSetting& setting, const std::vector<Method>& methods,
                       int replications, const RunOptions& opts) {
  if (methods.empty()) throw DomainError("run_setting: no methods given");
  if (replications < 1) throw DomainError("run_setting: replications must be >= 1");

  const SettingEngine engine = prepare_setting(setting, opts);
  const std::uint64_t tag = setting_tag(setting);
  const int n_total = setting.n_train + setting.n_valid + setting.n_test;
  const BasisSystem basis =
      build_basis(setting.interval_a(), setting.interval_b(), opts.basis_interior_knots,
                  opts.basis_degree, default_quadrature_points(setting.grid_size));

  // method-major result grid, filled replication by replication
  std::vector<std::vector<ResultRow>> grid_rows(methods.size());
  for (auto& v : grid_rows) v.resize(replications);

  const auto run_replication = [&](int rep) {
    Rng curve_rng = make_rng(setting.seed,
                             {tag, static_cast<std::uint64_t>(rep),
                              static_cast<std::uint64_t>(Stream::kCurves)});
    Rng noise_rng = make_rng(setting.seed,
                             {tag, static_cast<std::uint64_t>(rep),
                              static_cast<std::uint64_t>(Stream::kNoise)});
    const FunctionalSample all = engine.generate(n_total, curve_rng, noise_rng);
    const FunctionalSample train = all.slice(0, setting.n_train);
    const FunctionalSample valid = all.slice(setting.n_train, setting.n_valid);
    const FunctionalSample test =
        all.slice(setting.n_train + setting.n_valid, setting.n_test);

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      ResultRow row{methods[mi], rep, std::numeric_limits<double>::quiet_NaN(), ""};
      const std::uint64_t seed_base = derive_seed(
          setting.seed, {tag, static_cast<std::uint64_t>(rep),
                         static_cast<std::uint64_t>(100 + method_index(methods[mi]))});
      try {
        row.mspe = run_method(methods[mi], train, valid, test, basis, opts, seed_base);
      } catch (const std::exception& e) {
        row.note = e.what();
      }
      grid_rows[mi][rep] = std::move(row);
    }
  };

  const int jobs = std::max(1, std::min(opts.jobs, replications));
  if (jobs == 1) {
    for (int rep = 0; rep < replications; ++rep) run_replication(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < replications; rep = next.fetch_add(1)) {
          run_replication(rep);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  RunResults results{setting, {}, {}};
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    double sum = 0.0, sum2 = 0.0;
    int ok = 0;
    for (int rep = 0; rep < replications; ++rep) {
      results.rows.push_back(grid_rows[mi][rep]);
      const double v = grid_rows[mi][rep].mspe;
      if (std::isfinite(v)) {
        sum += v;
        sum2 += v * v;
        ++ok;
      }
    }
    MethodSummary s{methods[mi], 0.0, std::nullopt, ok, replications - ok};
    if (ok > 0) s.mean = sum / ok;
    if (ok > 1) s.sd = std::sqrt(std::max(0.0, (sum2 - sum * sum / ok) / (ok - 1)));
    results.summary.push_back(std::move(s));
  }
  return results;
}

std::string format_mean_sd(const MethodSummary& s) {
  char buf[64];
  if (s.n_ok == 0) return "failed";
  if (s.sd) {
    std::snprintf(buf, sizeof(buf), "%.3f (%.3f)", s.mean, *s.sd);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3f", s.mean);
  }
  return buf;
}

std::string results_csv(const RunResults& results) {
  std::ostringstream ss;
  ss << "method,setting,replication,mspe\n";
  ss.precision(17);
  for (const auto& row : results.rows) {
    ss << method_name(row.method) << ",\"" << results.setting.name() << "\","
       << row.replication << ",";
    if (std::isfinite(row.mspe)) ss << row.mspe;
    ss << "\n";
  }
  return ss.str();
}

std::string summary_table(const RunResults& results) {
  std::ostringstream ss;
  ss << "method,setting,mean_mspe,sd,failures\n";
  for (const auto& s : results.summary) {
    char mean_buf[32] = "";
    char sd_buf[32] = "";
    if (s.n_ok > 0) std::snprintf(mean_buf, sizeof(mean_buf), "%.6f", s.mean);
    if (s.sd) std::snprintf(sd_buf, sizeof(sd_buf), "%.6f", *s.sd);
    ss << method_name(s.method) << ",\"" << results.setting.name() << "\"," << mean_buf
       << "," << sd_buf << "," << s.n_failed << "\n";
  }
  return ss.str();
}

}  // namespace tfboost

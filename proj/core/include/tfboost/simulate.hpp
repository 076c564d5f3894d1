#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfboost/boosting.hpp"
#include "tfboost/flm.hpp"
#include "tfboost/fpca.hpp"
#include "tfboost/grid.hpp"
#include "tfboost/matern.hpp"
#include "tfboost/rng.hpp"

namespace tfboost {

enum class PredictorModel { M1, M2 };
enum class RegressionFunction { R1, R2, R3, R4, R5 };

struct SimSetting {
  PredictorModel predictor = PredictorModel::M2;
  RegressionFunction regression = RegressionFunction::R1;
  double snr = 20.0;
  int n_train = 400;
  int n_valid = 200;
  int n_test = 1000;
  int grid_size = 100;
  std::uint64_t seed = 0;

  void validate() const;
  std::string name() const;                        // e.g. "r1,M2,snr20"
  static SimSetting parse(const std::string& text);
  double interval_a() const { return predictor == PredictorModel::M1 ? -1.0 : 0.0; }
  double interval_b() const { return 1.0; }
};

// Curves a + b t^2 + c exp(t) + sin(d t) with a,b ~ U(0,1), c ~ U(-1,1),
// d ~ U(-2 pi, 2 pi), drawn in that order per curve.
FunctionalSample gen_m1(int n, const Grid& grid, Rng& rng);

// Karhunen-Loeve process mu + sum sqrt(lambda_j) xi_j phi_j with the printed
// variances (0.8, 0.3, 0.2, 0.1) attached to the Matern eigenfunction shapes.
struct M2Process {
  Grid grid;
  Eigen::VectorXd mean;
  Eigen::MatrixXd phi;     // 4 x m
  Eigen::VectorXd lambda;  // (0.8, 0.3, 0.2, 0.1)
};

Eigen::VectorXd m2_mean(const Grid& grid);  // 2 sin(pi t) exp(1 - t)
M2Process make_m2_process(const Grid& grid, const MaternSpec& spec = MaternSpec());
FunctionalSample compose_m2(const M2Process& process, const Eigen::MatrixXd& xi);
FunctionalSample gen_m2(int n, const M2Process& process, Rng& rng);
FunctionalSample gen_m2(int n, const Grid& grid, const MaternSpec& spec, Rng& rng);

// Noiseless responses. R1 needs a reference (mean plus at least two
// eigenfunctions): an independent large-sample FPCA for M1, the true process
// pieces for M2.
Eigen::VectorXd apply_regression(const FunctionalSample& sample, RegressionFunction which,
                                 const std::optional<FpcaResult>& fpca_ref = std::nullopt);

// rho = sqrt(sample variance / snr).
double calibrate_noise(const Eigen::VectorXd& noiseless, double snr);

// Trapezoid integral of grid-sampled values restricted to [lo, hi], with
// linear interpolation at the cut points.
double trapezoid_clipped(const Grid& grid, const Eigen::VectorXd& values, double lo,
                         double hi);

enum class Method { TFBoostB, TFBoostA1, TFBoostA2, TFBoostA3, Flm1, Flm2, MeanOnly };

std::string method_name(Method m);
Method parse_method(const std::string& name);
std::vector<std::string> valid_method_names();

struct RunOptions {
  std::vector<int> depth_grid = {1, 2, 3, 4};
  double gamma = 0.05;
  int t_max = 1000;
  int pool_size = 200;
  int min_node = 5;
  MultiStartConfig opt;   // 30 / 10 / 5 protocol
  std::vector<double> lambda_grid = default_lambda_grid();
  int basis_interior_knots = 3;
  int basis_degree = 3;
  int jobs = 1;
  int calibration_size = 10000;
  int reference_fpca_size = 3000;
};

struct ResultRow {
  Method method;
  int replication = 0;
  double mspe = 0.0;       // NaN when the fit failed
  std::string note;        // failure message, empty otherwise
};

struct MethodSummary {
  Method method;
  double mean = 0.0;
  std::optional<double> sd;  // absent for a single successful replication
  int n_ok = 0;
  int n_failed = 0;
};

struct RunResults {
  SimSetting setting;
  std::vector<ResultRow> rows;        // ordered by (method, replication)
  std::vector<MethodSummary> summary;
};

// Everything needed to generate data for one setting: grids, the M2 process,
// the R1 reference, and the calibrated noise scale.
struct SettingEngine {
  SimSetting setting;
  Grid grid;
  std::optional<M2Process> m2;
  std::optional<FpcaResult> r1_ref;
  double rho = 0.0;

  FunctionalSample generate(int n, Rng& curve_rng, Rng& noise_rng) const;
  Eigen::VectorXd signal(const FunctionalSample& curves) const;
};

SettingEngine prepare_setting(const SimSetting& setting, const RunOptions& opts);

// Per replication: generate n_train + n_valid + n_test curves, split in
// order, fit every method with validation-based tuning, score test MSPE.
RunResults run_setting(const SimSetting& setting, const std::vector<Method>& methods,
                       int replications, const RunOptions& opts);

std::string format_mean_sd(const MethodSummary& s);  // "0.091 (0.004)"

// results.csv (method,setting,replication,mspe) and the mean (sd) summary.
std::string results_csv(const RunResults& results);
std::string summary_table(const RunResults& results);

}  // namespace tfboost

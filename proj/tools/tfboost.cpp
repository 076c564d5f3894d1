// Command-line entry points: fit, predict, simulate.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tfboost/boosting.hpp"
#include "tfboost/dataset_io.hpp"
#include "tfboost/errors.hpp"
#include "tfboost/model_io.hpp"
#include "tfboost/simulate.hpp"

namespace {

using namespace tfboost;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::uint64_t resolve_seed(std::int64_t seed_flag) {
  if (seed_flag >= 0) return static_cast<std::uint64_t>(seed_flag);
  std::random_device rd;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed: " << drawn << "\n";
  return drawn;
}

std::vector<int> parse_depth_grid(const std::string& text) {
  std::vector<int> depths;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      depths.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse depth '" + token + "' in --depths");
    }
    if (depths.back() < 1) throw ConfigError("tree depths must be >= 1");
  }
  if (depths.empty()) throw ConfigError("--depths must name at least one depth");
  return depths;
}

LearnerConfig parse_learner(const std::string& name, int pool_size) {
  if (name == "b") return {LearnerKind::TypeB, 1, pool_size};
  if (name == "a1") return {LearnerKind::TypeA, 1, pool_size};
  if (name == "a2") return {LearnerKind::TypeA, 2, pool_size};
  if (name == "a3") return {LearnerKind::TypeA, 3, pool_size};
  throw ConfigError("unknown learner '" + name + "', expected a1, a2, a3, or b");
}

// Flat key=value config files. The tokens are spliced in right after the
// subcommand name, so command-line flags parsed later always win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    }
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const auto vfirst = value.find_first_not_of(" \t");
    value = vfirst == std::string::npos ? "" : value.substr(vfirst);
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    // insert after the subcommand token (the first non-flag argument)
    std::vector<std::string> out;
    const auto injected = config_tokens(path);
    bool done = false;
    for (const auto& a : args) {
      out.push_back(a);
      if (!done && !a.empty() && a[0] != '-') {
        out.insert(out.end(), injected.begin(), injected.end());
        done = true;
      }
    }
    if (!done) throw ConfigError("--config requires a subcommand");
    return out;
  }
  return args;
}

struct FitArgs {
  std::string train, valid, model_path, metrics_path, learner = "b";
  std::string depths = "1,2,3,4", loss = "squared", config;
  int pool_size = 200, t_max = 1000, knots = 3;
  double gamma = 0.05;
  std::int64_t seed = -1;
};

int cmd_fit(const FitArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const Dataset train = read_dataset_file(args.train);
  const Dataset valid = read_dataset_file(args.valid);
  if (!train.sample.has_response() || !valid.sample.has_response()) {
    throw DomainError("fit: training and validation files need y values");
  }

  const Grid& g = train.sample.grid;
  const BasisSystem basis = build_basis(g.a(), g.b(), args.knots, 3,
                                        default_quadrature_points(g.size()));

  BoostConfig cfg;
  cfg.learner = parse_learner(args.learner, args.pool_size);
  cfg.gamma = args.gamma;
  cfg.t_max = args.t_max;
  cfg.loss = Loss::parse(args.loss);

  std::optional<BoostModel> best;
  for (int depth : parse_depth_grid(args.depths)) {
    cfg.tree.max_depth = depth;
    cfg.seed = derive_seed(seed, {static_cast<std::uint64_t>(depth)});
    BoostModel model = fit_boost(train.sample, valid.sample, basis, cfg);
    std::cout << "depth " << depth << ": t_stop=" << model.t_stop
              << " valid_loss=" << model.valid_trace[model.t_stop] << "\n";
    if (!best || model.valid_trace[model.t_stop] < best->valid_trace[best->t_stop]) {
      best = std::move(model);
    }
  }

  save_boost_model(*best, args.model_path);
  if (!args.metrics_path.empty()) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "t,train_loss,valid_loss\n";
    for (std::size_t t = 0; t < best->train_trace.size(); ++t) {
      ss << t << "," << best->train_trace[t] << "," << best->valid_trace[t] << "\n";
    }
    atomic_write_file(args.metrics_path, ss.str());
  }
  std::cout << "selected depth " << best->config.tree.max_depth
            << ", t_stop " << best->t_stop
            << ", train_loss " << best->train_trace[best->t_stop]
            << ", valid_loss " << best->valid_trace[best->t_stop] << "\n"
            << "model written to " << args.model_path << "\n";
  return kExitOk;
}

struct PredictArgs {
  std::string model_path, data, out, config;
};

int cmd_predict(const PredictArgs& args) {
  const BoostModel model = load_boost_model(args.model_path);
  const Dataset data = read_dataset_file(args.data);
  const Eigen::VectorXd predictions = predict_boost(model, data.sample);
  atomic_write_file(args.out, predictions_csv(data.ids, predictions));
  std::cout << "wrote " << predictions.size() << " predictions to " << args.out << "\n";
  return kExitOk;
}

struct SimArgs {
  std::vector<std::string> settings;
  std::string methods = "tfboost-b,flm1,flm2";
  std::string out_dir, depths = "1,2,3,4", config;
  int reps = 10, t_max = 1000, pool_size = 200, jobs = 1;
  double gamma = 0.05;
  std::int64_t seed = -1;
};

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (c == ',' || c == '/' || c == ' ') c = '_';
  }
  return out;
}

int cmd_simulate(const SimArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);

  std::vector<SimSetting> settings;
  for (const auto& text : args.settings) {
    if (text == "all") {  // the full 16-combination grid
      for (const char* r : {"r1", "r2", "r3", "r4"}) {
        for (const char* m : {"M1", "M2"}) {
          for (const char* s : {"snr5", "snr20"}) {
            settings.push_back(SimSetting::parse(std::string(r) + "," + m + "," + s));
          }
        }
      }
    } else {
      settings.push_back(SimSetting::parse(text));
    }
  }

  std::vector<Method> methods;
  std::stringstream ss(args.methods);
  std::string token;
  while (std::getline(ss, token, ',')) methods.push_back(parse_method(token));
  if (methods.empty()) throw ConfigError("--methods must name at least one method");

  RunOptions opts;
  opts.depth_grid = parse_depth_grid(args.depths);
  opts.gamma = args.gamma;
  opts.t_max = args.t_max;
  opts.pool_size = args.pool_size;
  opts.jobs = args.jobs;

  std::filesystem::create_directories(args.out_dir);
  for (SimSetting setting : settings) {
    setting.seed = seed;
    const RunResults results = run_setting(setting, methods, args.reps, opts);
    const std::string stem = args.out_dir + "/" + sanitize(setting.name());
    atomic_write_file(stem + "_results.csv", results_csv(results));
    atomic_write_file(stem + "_summary.csv", summary_table(results));
    std::cout << setting.name() << "\n";
    for (const auto& s : results.summary) {
      std::cout << "  " << method_name(s.method) << ": " << format_mean_sd(s) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TFBoost: tree-based gradient boosting for scalar-on-function regression"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit a boosting model from CSV datasets");
  fit->add_option("--train", fit_args.train, "training dataset CSV")->required();
  fit->add_option("--valid", fit_args.valid, "validation dataset CSV")->required();
  fit->add_option("--model", fit_args.model_path, "output model document")->required();
  fit->add_option("--out", fit_args.metrics_path, "loss trace CSV");
  fit->add_option("--learner", fit_args.learner, "a1, a2, a3, or b");
  fit->add_option("--pool-size", fit_args.pool_size, "Type B candidate directions");
  fit->add_option("--gamma", fit_args.gamma, "shrinkage in (0,1)");
  fit->add_option("--t-max", fit_args.t_max, "boosting iterations");
  fit->add_option("--depths", fit_args.depths, "tree depth grid, e.g. 1,2,3,4");
  fit->add_option("--loss", fit_args.loss, "squared or huber:<delta>");
  fit->add_option("--knots", fit_args.knots, "interior knots of the cubic basis");
  fit->add_option("--seed", fit_args.seed, "master seed (drawn and printed if absent)");
  fit->add_option("--config", fit_args.config, "key=value config file, flags win");

  PredictArgs pred_args;
  auto* predict = app.add_subcommand("predict", "Predict responses for a dataset");
  predict->add_option("--model", pred_args.model_path, "model document")->required();
  predict->add_option("--test", pred_args.data, "input dataset CSV (y may be empty)")
      ->required();
  predict->add_option("--out", pred_args.out, "predictions CSV")->required();
  predict->add_option("--config", pred_args.config, "key=value config file, flags win");

  SimArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run simulation-study settings");
  simulate->add_option("--setting", sim_args.settings,
                       "setting like r1,M2,snr20 (repeatable; 'all' for the full grid)")
      ->required();
  simulate->add_option("--methods", sim_args.methods, "comma-separated method names");
  simulate->add_option("--reps", sim_args.reps, "replications");
  simulate->add_option("--out", sim_args.out_dir, "output directory")->required();
  simulate->add_option("--gamma", sim_args.gamma, "shrinkage");
  simulate->add_option("--t-max", sim_args.t_max, "boosting iterations");
  simulate->add_option("--pool-size", sim_args.pool_size, "Type B pool size");
  simulate->add_option("--depths", sim_args.depths, "tree depth grid");
  simulate->add_option("--jobs", sim_args.jobs, "parallel replications");
  simulate->add_option("--seed", sim_args.seed, "master seed (drawn and printed if absent)");
  simulate->add_option("--config", sim_args.config, "key=value config file, flags win");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = splice_config(args);
    // CLI11 consumes reversed argument vectors.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (fit->parsed()) return cmd_fit(fit_args);
    if (predict->parsed()) return cmd_predict(pred_args);
    if (simulate->parsed()) return cmd_simulate(sim_args);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

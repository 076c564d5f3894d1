#include "tfboost/model_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  if (rows.empty()) return Eigen::MatrixXd();
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

json tree_to_json(const Tree& tree, int node) {
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) return json{{"value", n.value}, {"count", n.count}};
  return json{{"feature", n.feature},
              {"threshold", n.threshold},
              {"left", tree_to_json(tree, n.left)},
              {"right", tree_to_json(tree, n.right)}};
}

int tree_from_json(const json& j, Tree& tree) {
  const int me = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (j.contains("value")) {
    tree.nodes[me].value = j.at("value").get<double>();
    tree.nodes[me].count = j.at("count").get<int>();
    return me;
  }
  tree.nodes[me].feature = j.at("feature").get<int>();
  tree.nodes[me].threshold = j.at("threshold").get<double>();
  const int l = tree_from_json(j.at("left"), tree);
  const int r = tree_from_json(j.at("right"), tree);
  tree.nodes[me].left = l;
  tree.nodes[me].right = r;
  return me;
}

json basis_to_json(const BasisSystem& basis) {
  return json{{"a", basis.a()},
              {"b", basis.b()},
              {"degree", basis.degree},
              {"interior_knots", vector_to_json(basis.interior_knots)},
              {"quadrature_points", static_cast<int>(basis.grid.size())},
              {"transform", matrix_to_json(basis.transform)}};
}

BasisSystem basis_from_json(const json& j) {
  // Rebuild the raw spline table deterministically from the stored knots and
  // overwrite the transform with the stored one bit-for-bit.
  BasisSystem basis = build_basis(j.at("a").get<double>(), j.at("b").get<double>(),
                                  static_cast<int>(j.at("interior_knots").size()),
                                  j.at("degree").get<int>(),
                                  j.at("quadrature_points").get<int>());
  basis.transform = matrix_from_json(j.at("transform"));
  basis.ortho = basis.transform * basis.raw;
  return basis;
}

json mit_to_json(const MultiIndexTree& mit) {
  json dirs = json::array();
  for (const auto& d : mit.directions) dirs.push_back(vector_to_json(d.coeffs));
  return json{{"kind", mit.kind == LearnerKind::TypeA ? "A" : "B"},
              {"directions", dirs},
              {"uses_scalars", mit.uses_scalars},
              {"n_features", mit.tree.n_features},
              {"tree", tree_to_json(mit.tree, 0)}};
}

MultiIndexTree mit_from_json(const json& j) {
  MultiIndexTree mit;
  mit.kind = j.at("kind").get<std::string>() == "A" ? LearnerKind::TypeA
                                                    : LearnerKind::TypeB;
  for (const auto& d : j.at("directions")) {
    mit.directions.emplace_back(vector_from_json(d));
  }
  mit.uses_scalars = j.at("uses_scalars").get<bool>();
  mit.tree.n_features = j.at("n_features").get<int>();
  tree_from_json(j.at("tree"), mit.tree);
  return mit;
}

json config_to_json(const BoostConfig& cfg) {
  return json{{"learner", cfg.learner.kind == LearnerKind::TypeA ? "A" : "B"},
              {"k", cfg.learner.k},
              {"pool_size", cfg.learner.pool_size},
              {"gamma", cfg.gamma},
              {"t_max", cfg.t_max},
              {"max_depth", cfg.tree.max_depth},
              {"min_node", cfg.tree.min_node},
              {"min_split_improvement", cfg.tree.min_split_improvement},
              {"loss", cfg.loss.name()},
              {"seed", cfg.seed}};
}

BoostConfig config_from_json(const json& j) {
  BoostConfig cfg;
  cfg.learner.kind = j.at("learner").get<std::string>() == "A" ? LearnerKind::TypeA
                                                               : LearnerKind::TypeB;
  cfg.learner.k = j.at("k").get<int>();
  cfg.learner.pool_size = j.at("pool_size").get<int>();
  cfg.gamma = j.at("gamma").get<double>();
  cfg.t_max = j.at("t_max").get<int>();
  cfg.tree.max_depth = j.at("max_depth").get<int>();
  cfg.tree.min_node = j.at("min_node").get<int>();
  cfg.tree.min_split_improvement = j.at("min_split_improvement").get<double>();
  cfg.loss = Loss::parse(j.at("loss").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

json parse_document(const std::string& text, const std::string& expected_format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
  if (!doc.contains("format") || doc.at("format") != expected_format) {
    throw ParseError("model document: missing or wrong format id, expected '" +
                     expected_format + "'");
  }
  const int version = doc.value("version", -1);
  if (version != kFormatVersion) {
    throw ParseError("model document: unsupported version " + std::to_string(version) +
                     ", this build reads version " + std::to_string(kFormatVersion));
  }
  return doc;
}

}  // namespace

std::string boost_model_to_string(const BoostModel& model) {
  json steps = json::array();
  for (int t = 0; t < model.t_stop; ++t) {
    steps.push_back(json{{"alpha", model.steps[t].alpha},
                         {"learner", mit_to_json(model.steps[t].learner)}});
  }
  json doc{{"format", "tfboost-model"},
           {"version", kFormatVersion},
           {"f0", model.f0},
           {"t_stop", model.t_stop},
           {"basis", basis_to_json(model.basis)},
           {"config", config_to_json(model.config)},
           {"steps", steps},
           {"train_trace", model.train_trace},
           {"valid_trace", model.valid_trace}};
  return doc.dump();
}

BoostModel boost_model_from_string(const std::string& text) {
  const json doc = parse_document(text, "tfboost-model");
  try {
    BoostModel model;
    model.f0 = doc.at("f0").get<double>();
    model.t_stop = doc.at("t_stop").get<int>();
    model.basis = basis_from_json(doc.at("basis"));
    model.config = config_from_json(doc.at("config"));
    for (const auto& s : doc.at("steps")) {
      model.steps.push_back(BoostStep{mit_from_json(s.at("learner")),
                                      s.at("alpha").get<double>()});
    }
    model.train_trace = doc.at("train_trace").get<std::vector<double>>();
    model.valid_trace = doc.at("valid_trace").get<std::vector<double>>();
    if (model.t_stop < 1 || model.t_stop > static_cast<int>(model.steps.size())) {
      throw ParseError("model document: t_stop outside stored steps");
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
}

void save_boost_model(const BoostModel& model, const std::string& path) {
  atomic_write_file(path, boost_model_to_string(model));
}

BoostModel load_boost_model(const std::string& path) {
  return boost_model_from_string(read_file(path));
}

std::string flm_model_to_string(const FlmModel& model) {
  json doc{{"format", "tfboost-flm"},
           {"version", kFormatVersion},
           {"kind", model.kind == FlmModel::Kind::Spline ? "spline" : "fpc"},
           {"intercept", model.intercept},
           {"grid", vector_to_json(model.grid.points())},
           {"beta", vector_to_json(model.beta)},
           {"scalar_coeffs", vector_to_json(model.scalar_coeffs)},
           {"rank_deficient", model.rank_deficient},
           {"penalty", model.penalty},
           {"n_components", model.n_components}};
  return doc.dump();
}

FlmModel flm_model_from_string(const std::string& text) {
  const json doc = parse_document(text, "tfboost-flm");
  try {
    FlmModel model;
    model.kind = doc.at("kind").get<std::string>() == "spline" ? FlmModel::Kind::Spline
                                                               : FlmModel::Kind::Fpc;
    model.intercept = doc.at("intercept").get<double>();
    model.grid = Grid(vector_from_json(doc.at("grid")));
    model.beta = vector_from_json(doc.at("beta"));
    model.scalar_coeffs = vector_from_json(doc.at("scalar_coeffs"));
    model.rank_deficient = doc.at("rank_deficient").get<bool>();
    model.penalty = doc.at("penalty").get<double>();
    model.n_components = doc.at("n_components").get<int>();
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out) throw DomainError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DomainError("cannot replace '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tfboost

#include "onset/ml/model.hpp"

#include <chrono>
#include <json.hpp>
#include <stdexcept>

#include "onset/util/text.hpp"

namespace onset::ml {

using json = nlohmann::json;

std::string_view display_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::DecisionTree: return "Decision Tree";
    case LearnerKind::RandomForest: return "Random Forest";
    case LearnerKind::NaiveBayes: return "Naive Bayes";
    case LearnerKind::KNearestNeighbor: return "k-Nearest Neighbor";
    case LearnerKind::LogisticRegression: return "Logistic Regression";
    case LearnerKind::NeuralNetwork: return "Neural Network";
  }
  return "?";
}

std::string_view slug(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::DecisionTree: return "decision_tree";
    case LearnerKind::RandomForest: return "random_forest";
    case LearnerKind::NaiveBayes: return "naive_bayes";
    case LearnerKind::KNearestNeighbor: return "knn";
    case LearnerKind::LogisticRegression: return "logistic_regression";
    case LearnerKind::NeuralNetwork: return "neural_network";
  }
  return "?";
}

LearnerKind learner_from_slug(std::string_view s) {
  for (auto k : kAllLearners) {
    if (slug(k) == s) return k;
  }
  throw std::invalid_argument("unknown learner '" + std::string(s) + "'");
}

int ClassifierModel::predict(std::span<const double> row) const {
  return std::visit([&](const auto& m) { return m.predict(row); }, model);
}

std::vector<int> ClassifierModel::predict_all(const Matrix& x) const {
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = predict(
        std::span<const double>(x.row(i).data(), static_cast<std::size_t>(x.cols())));
  }
  return out;
}

namespace {

json tree_cfg_json(const TreeConfig& c) {
  return {{"max_depth", c.max_depth},
          {"min_samples_split", c.min_samples_split},
          {"min_samples_leaf", c.min_samples_leaf},
          {"feature_rule", std::string(to_string(c.feature_rule))}};
}

json forest_cfg_json(const RFConfig& c) {
  return {{"n_trees", c.n_trees},
          {"max_depth", c.max_depth},
          {"min_samples_split", c.min_samples_split},
          {"min_samples_leaf", c.min_samples_leaf},
          {"feature_rule", std::string(to_string(c.feature_rule))},
          {"bootstrap", c.bootstrap}};
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Matrix matrix_from(const json& j) {
  auto r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
  Matrix m(r, c);
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != r) throw std::runtime_error("matrix row count mismatch");
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = data.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != c) throw std::runtime_error("matrix column count mismatch");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vector_from(const json& j) {
  auto vals = j.get<std::vector<double>>();
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

json node_json(const std::vector<TreeNode>& nodes, int at) {
  const auto& n = nodes[static_cast<std::size_t>(at)];
  json j = {{"label", n.label}, {"samples", n.samples}};
  if (n.is_leaf()) return j;
  j["feature"] = n.feature;
  j["threshold"] = n.threshold;
  j["left"] = node_json(nodes, n.left);
  j["right"] = node_json(nodes, n.right);
  return j;
}

int node_from(const json& j, int depth, std::vector<TreeNode>& nodes) {
  int at = static_cast<int>(nodes.size());
  nodes.push_back({});
  TreeNode n;
  n.label = j.at("label").get<int>();
  n.samples = j.at("samples").get<int>();
  n.depth = depth;
  if (j.contains("feature")) {
    n.feature = j.at("feature").get<int>();
    n.threshold = j.at("threshold").get<double>();
    n.left = node_from(j.at("left"), depth + 1, nodes);
    n.right = node_from(j.at("right"), depth + 1, nodes);
  }
  nodes[static_cast<std::size_t>(at)] = n;
  return at;
}

json tree_json(const TreeModel& t) {
  return {{"num_features", t.num_features()},
          {"num_classes", t.num_classes()},
          {"depth", t.depth()},
          {"root", node_json(t.nodes(), 0)}};
}

TreeModel tree_from(const json& j) {
  std::vector<TreeNode> nodes;
  node_from(j.at("root"), 0, nodes);
  return TreeModel(std::move(nodes), j.at("num_features").get<int>(), j.at("num_classes").get<int>());
}

json labeled_json(const LabeledData& d) {
  return {{"num_classes", d.num_classes}, {"x", matrix_json(d.x)}, {"y", d.y}};
}

LabeledData labeled_from(const json& j) {
  LabeledData d;
  d.num_classes = j.at("num_classes").get<int>();
  d.x = matrix_from(j.at("x"));
  d.y = j.at("y").get<std::vector<int>>();
  validate(d);
  return d;
}

json scaler_json(const Standardizer& s) {
  return {{"mean", vector_json(s.mean)}, {"scale", vector_json(s.scale)}};
}

Standardizer scaler_from(const json& j) {
  return {vector_from(j.at("mean")), vector_from(j.at("scale"))};
}

struct ToJson {
  json operator()(const TreeModel& m) const { return tree_json(m); }
  json operator()(const ForestModel& m) const {
    json trees = json::array();
    for (const auto& t : m.trees()) trees.push_back(tree_json(t));
    return {{"num_classes", m.num_classes()}, {"trees", trees}};
  }
  json operator()(const NaiveBayesModel& m) const {
    json prior = json::array();
    for (double p : m.log_prior) prior.push_back(std::isinf(p) ? json(nullptr) : json(p));
    return {{"mean", matrix_json(m.mean)}, {"variance", matrix_json(m.variance)}, {"log_prior", prior}};
  }
  json operator()(const KnnModel& m) const { return {{"k", m.k}, {"train", labeled_json(m.train)}}; }
  json operator()(const LogRegModel& m) const {
    return {{"scaler", scaler_json(m.scaler)},
            {"w", matrix_json(m.params.w)},
            {"b", vector_json(m.params.b)}};
  }
  json operator()(const MlpModel& m) const {
    return {{"scaler", scaler_json(m.scaler)},
            {"w1", matrix_json(m.params.w1)},
            {"b1", vector_json(m.params.b1)},
            {"w2", matrix_json(m.params.w2)},
            {"b2", vector_json(m.params.b2)}};
  }
};

ModelVariant variant_from(LearnerKind kind, const json& j) {
  switch (kind) {
    case LearnerKind::DecisionTree: return tree_from(j);
    case LearnerKind::RandomForest: {
      std::vector<TreeModel> trees;
      for (const auto& t : j.at("trees")) trees.push_back(tree_from(t));
      return ForestModel(std::move(trees), j.at("num_classes").get<int>());
    }
    case LearnerKind::NaiveBayes: {
      NaiveBayesModel m;
      m.mean = matrix_from(j.at("mean"));
      m.variance = matrix_from(j.at("variance"));
      for (const auto& p : j.at("log_prior")) {
        m.log_prior.push_back(p.is_null() ? -std::numeric_limits<double>::infinity() : p.get<double>());
      }
      return m;
    }
    case LearnerKind::KNearestNeighbor:
      return KnnModel{labeled_from(j.at("train")), j.at("k").get<int>()};
    case LearnerKind::LogisticRegression:
      return LogRegModel{scaler_from(j.at("scaler")),
                         {matrix_from(j.at("w")), vector_from(j.at("b"))}};
    case LearnerKind::NeuralNetwork:
      return MlpModel{scaler_from(j.at("scaler")),
                      {matrix_from(j.at("w1")), vector_from(j.at("b1")), matrix_from(j.at("w2")),
                       vector_from(j.at("b2"))}};
  }
  throw std::runtime_error("unknown model kind");
}

}  // namespace

std::string config_to_json(const RFConfig& cfg) { return forest_cfg_json(cfg).dump(); }

ClassifierModel train_model(LearnerKind kind, const LabeledData& data,
                            const LearnerSuiteConfig& cfg, std::uint64_t seed, unsigned workers) {
  ClassifierModel out;
  out.meta.kind = kind;
  out.meta.seed = seed;
  auto start = std::chrono::steady_clock::now();
  switch (kind) {
    case LearnerKind::DecisionTree:
      out.model = train_decision_tree(data, cfg.tree, seed);
      out.meta.config_json = tree_cfg_json(cfg.tree).dump();
      break;
    case LearnerKind::RandomForest:
      out.model = train_random_forest(data, cfg.forest, seed, workers);
      out.meta.config_json = forest_cfg_json(cfg.forest).dump();
      break;
    case LearnerKind::NaiveBayes:
      out.model = train_gaussian_nb(data);
      out.meta.config_json = json{{"variance_floor", kNaiveBayesVarianceFloor}}.dump();
      break;
    case LearnerKind::KNearestNeighbor:
      out.model = train_knn(data, cfg.knn);
      out.meta.config_json = json{{"k", cfg.knn.k}}.dump();
      break;
    case LearnerKind::LogisticRegression:
      out.model = train_logreg(data, cfg.logreg);
      out.meta.config_json = json{{"learning_rate", cfg.logreg.learning_rate},
                                  {"epochs", cfg.logreg.epochs},
                                  {"l2", cfg.logreg.l2}}
                                 .dump();
      break;
    case LearnerKind::NeuralNetwork: {
      MlpConfig mc = cfg.mlp;
      mc.seed = seed;
      out.model = train_mlp(data, mc);
      out.meta.config_json = json{{"hidden_units", mc.hidden_units},
                                  {"learning_rate", mc.learning_rate},
                                  {"epochs", mc.epochs},
                                  {"batch_size", mc.batch_size},
                                  {"l2", mc.l2}}
                                 .dump();
      break;
    }
  }
  out.meta.train_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string model_to_json(const ClassifierModel& model) {
  json j = {{"format", "onset-model"},
            {"version", kModelFormatVersion},
            {"kind", std::string(slug(model.meta.kind))},
            {"meta",
             {{"seed", model.meta.seed},
              {"config", json::parse(model.meta.config_json.empty() ? "{}" : model.meta.config_json)},
              {"train_seconds", model.meta.train_seconds}}},
            {"model", std::visit(ToJson{}, model.model)}};
  return j.dump() + "\n";
}

ClassifierModel model_from_json(std::string_view text) {
  json j = json::parse(text);
  if (j.value("format", "") != "onset-model") throw std::runtime_error("not an onset model file");
  int version = j.at("version").get<int>();
  if (version != kModelFormatVersion) {
    throw std::runtime_error("model format version " + std::to_string(version) +
                             " is not supported (expected " +
                             std::to_string(kModelFormatVersion) + ")");
  }
  ClassifierModel m;
  m.meta.kind = learner_from_slug(j.at("kind").get<std::string>());
  const auto& meta = j.at("meta");
  m.meta.seed = meta.at("seed").get<std::uint64_t>();
  m.meta.config_json = meta.at("config").dump();
  m.meta.train_seconds = meta.at("train_seconds").get<double>();
  m.model = variant_from(m.meta.kind, j.at("model"));
  return m;
}

void save_model(const ClassifierModel& model, const std::string& path) {
  text::write_file(path, model_to_json(model));
}

ClassifierModel load_model(const std::string& path) { return model_from_json(text::read_file(path)); }

}  // namespace onset::ml

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "onset/ml/forest.hpp"
#include "onset/ml/knn.hpp"
#include "onset/ml/logreg.hpp"
#include "onset/ml/mlp.hpp"
#include "onset/ml/naive_bayes.hpp"
#include "onset/ml/tree.hpp"

namespace onset::ml {

enum class LearnerKind {
  DecisionTree,
  RandomForest,
  NaiveBayes,
  KNearestNeighbor,
  LogisticRegression,
  NeuralNetwork
};

/// Report row order.
inline constexpr std::array<LearnerKind, 6> kAllLearners{
    LearnerKind::DecisionTree,     LearnerKind::RandomForest,       LearnerKind::NaiveBayes,
    LearnerKind::KNearestNeighbor, LearnerKind::LogisticRegression, LearnerKind::NeuralNetwork};

std::string_view display_name(LearnerKind kind);  // "Random Forest"
std::string_view slug(LearnerKind kind);          // "random_forest"
LearnerKind learner_from_slug(std::string_view s);

struct LearnerSuiteConfig {
  TreeConfig tree{};
  RFConfig forest{};
  KnnConfig knn{};
  LogRegConfig logreg{};
  MlpConfig mlp{};
};

struct ModelMeta {
  LearnerKind kind = LearnerKind::DecisionTree;
  std::uint64_t seed = 0;
  std::string config_json;  // the learner's configuration, as JSON text
  double train_seconds = 0.0;
};

using ModelVariant =
    std::variant<TreeModel, ForestModel, NaiveBayesModel, KnnModel, LogRegModel, MlpModel>;

/// A trained classifier of any supported kind plus its training metadata.
struct ClassifierModel {
  ModelVariant model;
  ModelMeta meta;

  int predict(std::span<const double> row) const;
  std::vector<int> predict_all(const Matrix& x) const;
};

/// Trains one learner; the wall-clock fit time is stored in meta.train_seconds.
ClassifierModel train_model(LearnerKind kind, const LabeledData& data,
                            const LearnerSuiteConfig& cfg, std::uint64_t seed,
                            unsigned workers = 1);

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON: trees as nested nodes, matrices as row-major arrays.
std::string model_to_json(const ClassifierModel& model);
/// Rejects unknown formats and version mismatches with std::runtime_error.
ClassifierModel model_from_json(std::string_view text);

void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

std::string config_to_json(const RFConfig& cfg);

}  // namespace onset::ml

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onset/grid/grid_case.hpp"
#include "onset/ml/model.hpp"
#include "onset/report/metrics.hpp"
#include "onset/sim/scenarios.hpp"

namespace onset::report {

/// One learner's row. Seconds are wall-clock and excluded from
/// reproducibility comparisons.
struct ModelRow {
  ml::LearnerKind kind = ml::LearnerKind::DecisionTree;
  bool ok = false;
  std::string error;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
  ConfusionMatrix test_confusion;
};

/// One sweep scenario: a dataset generated at a given k and the test
/// accuracy of every learner on it (nullopt for a failed learner).
struct ScenarioColumn {
  std::string name;  // "N-3", "N-2 Modified"
  int k = 2;
  double load_scale = 1.0;
  bool exhaustive = false;
  std::size_t samples = 0;
  std::array<std::size_t, sim::kNumClasses> class_counts{};
  std::array<std::optional<double>, ml::kAllLearners.size()> test_accuracy{};
};

struct ModelReport {
  std::vector<ModelRow> rows;
  std::vector<ScenarioColumn> scenarios;
};

/// Accuracy and timing of an already trained model; train_seconds comes
/// from the model metadata.
ModelRow evaluate_model(const ml::ClassifierModel& model, const ml::LabeledData& train,
                        const ml::LabeledData& test);

/// Trains all six learners on `train` (in report row order) and evaluates
/// them on `test`. Learner j trains with derive_seed(seed, slug). A learner
/// that throws becomes a failed row. Trained models are appended to
/// `models` when given (failed learners are skipped).
ModelReport compare_models(const ml::LabeledData& train, const ml::LabeledData& test,
                           const ml::LearnerSuiteConfig& cfg, std::uint64_t seed,
                           unsigned workers = 1, std::vector<ml::ClassifierModel>* models = nullptr);

/// Accuracy of always predicting the most frequent training class.
double majority_baseline(const ml::LabeledData& train, const ml::LabeledData& test);

struct SweepScenario {
  std::string name;
  int k = 2;
  double load_scale = 1.0;  // applied to every load and generation
};

/// "N-k" for each k, with an "N-2 Modified" column (injections scaled by
/// `modified_load_scale`) after N-2 when that scale is set.
std::vector<SweepScenario> sweep_scenarios(const std::vector<int>& ks,
                                           std::optional<double> modified_load_scale = {});

struct SweepOptions {
  std::vector<SweepScenario> scenarios;
  std::size_t samples_per_scenario = 500;  // exhaustive when C(m, k) fits
  double train_fraction = 0.7;
  sim::SimulationConfig sim;
  ml::LearnerSuiteConfig learners;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// One column per scenario. Each scenario draws contingencies from its own
/// stream (keyed by the scenario name), so columns are reproducible one by one.
std::vector<ScenarioColumn> k_sweep(const grid::GridCase& c, const SweepOptions& opts);

}  // namespace onset::report

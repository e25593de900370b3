#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "onset/hpo/search_space.hpp"
#include "onset/hpo/tune.hpp"
#include "onset/report/compare.hpp"

namespace onset::report {

/// Timing convention for every artifact: JSON keys ending in "_seconds" and
/// Markdown table columns whose header ends in "(s)" hold wall-clock values.
/// Everything else is a pure function of the inputs and the seed.
inline constexpr int kReportSchemaVersion = 1;

struct DatasetSummary {
  std::size_t samples = 0;
  std::size_t feature_dim = 0;
  std::size_t train_samples = 0;
  std::size_t test_samples = 0;
  std::array<std::size_t, sim::kNumClasses> class_counts{};
  double majority_baseline = 0.0;
};

struct TuneSummary {
  hpo::SearchSpace space;
  int budget = 0;
  int folds = 0;
  int evaluations = 0;
  int failed_evaluations = 0;
  ml::RFConfig default_config;
  ml::RFConfig best_config;
  double default_cv_accuracy = 0.0;
  double best_cv_accuracy = 0.0;
  std::optional<double> test_accuracy;
  std::optional<ConfusionMatrix> test_confusion;
  double train_seconds = 0.0;
};

TuneSummary summarize_tuning(const hpo::TuneResult& result, const hpo::SearchSpace& space,
                             int folds, const ml::LabeledData* test = nullptr);

struct RunReport {
  std::uint64_t seed = 0;
  std::optional<DatasetSummary> dataset;
  ModelReport models;
  std::optional<TuneSummary> tune;
};

/// Schema-versioned JSON with full-precision accuracies.
std::string report_json(const RunReport& report);
/// Markdown tables in the layout of the comparison, tuning and sweep tables;
/// accuracies to 4 decimals.
std::string report_markdown(const RunReport& report);

/// One line comparing the tuned configuration with the default one.
std::string tuning_comparison_line(const TuneSummary& t);

}  // namespace onset::report

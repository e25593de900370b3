#include "onset/report/compare.hpp"

#include <chrono>
#include <stdexcept>

#include "onset/features/dataset.hpp"
#include "onset/sim/contingency.hpp"
#include "onset/util/rng.hpp"

namespace onset::report {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t row_index(ml::LearnerKind kind) {
  for (std::size_t i = 0; i < ml::kAllLearners.size(); ++i) {
    if (ml::kAllLearners[i] == kind) return i;
  }
  throw std::logic_error("unknown learner");
}

}  // namespace

ModelRow evaluate_model(const ml::ClassifierModel& model, const ml::LabeledData& train,
                        const ml::LabeledData& test) {
  ModelRow row;
  row.kind = model.meta.kind;
  row.train_seconds = model.meta.train_seconds;

  auto train_pred = model.predict_all(train.x);
  row.train_accuracy = accuracy(confusion_matrix(std::span<const int>(train.y),
                                                 std::span<const int>(train_pred)));

  auto t0 = Clock::now();
  auto test_pred = model.predict_all(test.x);
  row.test_seconds = seconds_since(t0);
  row.test_confusion =
      confusion_matrix(std::span<const int>(test.y), std::span<const int>(test_pred));
  row.test_accuracy = accuracy(row.test_confusion);
  row.ok = true;
  return row;
}

ModelReport compare_models(const ml::LabeledData& train, const ml::LabeledData& test,
                           const ml::LearnerSuiteConfig& cfg, std::uint64_t seed,
                           unsigned workers, std::vector<ml::ClassifierModel>* models) {
  ModelReport report;
  for (auto kind : ml::kAllLearners) {
    try {
      auto model = ml::train_model(kind, train, cfg, derive_seed(seed, ml::slug(kind)), workers);
      report.rows.push_back(evaluate_model(model, train, test));
      if (models) models->push_back(std::move(model));
    } catch (const std::exception& e) {
      ModelRow failed;
      failed.kind = kind;
      failed.error = e.what();
      report.rows.push_back(std::move(failed));
    }
  }
  return report;
}

double majority_baseline(const ml::LabeledData& train, const ml::LabeledData& test) {
  if (test.rows() == 0) throw std::invalid_argument("baseline of an empty test set");
  auto counts = train.class_counts();
  int majority = ml::argmax_lowest(std::span<const std::size_t>(counts));
  std::size_t hits = 0;
  for (int y : test.y) hits += (y == majority);
  return static_cast<double>(hits) / static_cast<double>(test.rows());
}

std::vector<SweepScenario> sweep_scenarios(const std::vector<int>& ks,
                                           std::optional<double> modified_load_scale) {
  std::vector<SweepScenario> out;
  for (int k : ks) {
    out.push_back({"N-" + std::to_string(k), k, 1.0});
    if (k == 2 && modified_load_scale) out.push_back({"N-2 Modified", 2, *modified_load_scale});
  }
  return out;
}

std::vector<ScenarioColumn> k_sweep(const grid::GridCase& c, const SweepOptions& opts) {
  if (opts.samples_per_scenario == 0) throw std::invalid_argument("sweep sample budget is zero");
  const auto sim_seed = derive_seed(opts.seed, "sim");
  const auto split_seed = derive_seed(opts.seed, "split");
  const auto learner_seed = derive_seed(opts.seed, "learners");

  std::vector<ScenarioColumn> columns;
  for (const auto& sc : opts.scenarios) {
    if (sc.k < 2) throw std::invalid_argument("sweep k must be at least 2");
    if (!(sc.load_scale > 0.0)) throw std::invalid_argument("sweep load scale must be positive");
    const grid::GridCase scenario_case = sc.load_scale == 1.0 ? c : c.scaled_injections(sc.load_scale);

    ScenarioColumn col;
    col.name = sc.name;
    col.k = sc.k;
    col.load_scale = sc.load_scale;
    auto total = sim::binomial(c.branches().size(), static_cast<std::uint64_t>(sc.k));
    std::vector<sim::ContingencySpec> specs;
    if (total <= opts.samples_per_scenario) {
      specs = sim::enumerate_contingencies(c, sc.k);
      col.exhaustive = true;
    } else {
      specs = sim::sample_contingencies(c, sc.k, opts.samples_per_scenario,
                                        derive_seed(sim_seed, sc.name));
    }
    auto data = features::assemble_dataset(scenario_case, specs, opts.sim, opts.workers);
    col.samples = data.size();
    col.class_counts = data.class_counts();

    auto [train, test] = features::split(data, opts.train_fraction, derive_seed(split_seed, sc.name));
    auto report = compare_models(train.to_labeled(), test.to_labeled(), opts.learners,
                                 derive_seed(learner_seed, sc.name), opts.workers);
    for (const auto& row : report.rows) {
      if (row.ok) col.test_accuracy[row_index(row.kind)] = row.test_accuracy;
    }
    columns.push_back(std::move(col));
  }
  return columns;
}

}  // namespace onset::report

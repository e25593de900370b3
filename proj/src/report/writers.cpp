#include "onset/report/writers.hpp"

#include <json.hpp>
#include <sstream>

#include "onset/ml/model.hpp"
#include "onset/util/text.hpp"

namespace onset::report {

namespace {

using nlohmann::ordered_json;

std::string fmt4(double v) { return text::format_fixed(v, 4); }

ordered_json rf_json(const ml::RFConfig& c) {
  return ordered_json::parse(ml::config_to_json(c));
}

ordered_json confusion_json(const ConfusionMatrix& cm) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : cm.counts) rows.push_back(r);
  return rows;
}

template <class T>
std::string join_levels(const std::vector<T>& levels) {
  std::string out = "{";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, ml::FeatureRule>) {
      out += std::string(ml::to_string(levels[i]));
    } else if constexpr (std::is_same_v<T, bool>) {
      out += levels[i] ? "true" : "false";
    } else {
      out += std::to_string(levels[i]);
    }
  }
  return out + "}";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

TuneSummary summarize_tuning(const hpo::TuneResult& result, const hpo::SearchSpace& space,
                             int folds, const ml::LabeledData* test) {
  TuneSummary t;
  t.space = space;
  t.budget = result.search.budget;
  t.folds = folds;
  t.evaluations = static_cast<int>(result.search.trace.size());
  for (const auto& p : result.search.trace) t.failed_evaluations += p.failed;
  t.default_config = result.default_point.config;
  t.best_config = result.best_config;
  t.default_cv_accuracy = 1.0 - result.default_point.objective;
  t.best_cv_accuracy = 1.0 - result.search.best().objective;
  t.test_accuracy = result.test_accuracy;
  if (test && !result.test_predictions.empty()) {
    t.test_confusion = confusion_matrix(std::span<const int>(test->y),
                                        std::span<const int>(result.test_predictions));
  }
  t.train_seconds = result.train_seconds;
  return t;
}

std::string report_json(const RunReport& r) {
  ordered_json j;
  j["schema"] = "onset-report";
  j["schema_version"] = kReportSchemaVersion;
  j["seed"] = r.seed;

  if (r.dataset) {
    const auto& d = *r.dataset;
    ordered_json counts;
    for (auto c : sim::kAllClasses) {
      counts[std::to_string(sim::class_code(c))] = d.class_counts[static_cast<std::size_t>(sim::class_index(c))];
    }
    j["dataset"] = {{"samples", d.samples},
                    {"feature_dim", d.feature_dim},
                    {"train_samples", d.train_samples},
                    {"test_samples", d.test_samples},
                    {"class_counts", counts},
                    {"majority_baseline", d.majority_baseline}};
  }

  ordered_json models = ordered_json::array();
  for (const auto& row : r.models.rows) {
    ordered_json m;
    m["model"] = ml::display_name(row.kind);
    m["slug"] = ml::slug(row.kind);
    m["ok"] = row.ok;
    if (row.ok) {
      m["train_accuracy"] = row.train_accuracy;
      m["test_accuracy"] = row.test_accuracy;
      m["confusion"] = confusion_json(row.test_confusion);
      m["train_seconds"] = row.train_seconds;
      m["test_seconds"] = row.test_seconds;
    } else {
      m["error"] = row.error;
    }
    models.push_back(std::move(m));
  }
  j["models"] = std::move(models);

  if (r.tune) {
    const auto& t = *r.tune;
    ordered_json tj;
    tj["budget"] = t.budget;
    tj["folds"] = t.folds;
    tj["evaluations"] = t.evaluations;
    tj["failed_evaluations"] = t.failed_evaluations;
    tj["default_config"] = rf_json(t.default_config);
    tj["default_cv_accuracy"] = t.default_cv_accuracy;
    tj["best_config"] = rf_json(t.best_config);
    tj["best_cv_accuracy"] = t.best_cv_accuracy;
    if (t.test_accuracy) tj["test_accuracy"] = *t.test_accuracy;
    if (t.test_confusion) tj["test_confusion"] = confusion_json(*t.test_confusion);
    tj["train_seconds"] = t.train_seconds;
    j["tuning"] = std::move(tj);
  }

  if (!r.models.scenarios.empty()) {
    ordered_json sweep = ordered_json::array();
    for (const auto& col : r.models.scenarios) {
      ordered_json c;
      c["scenario"] = col.name;
      c["k"] = col.k;
      c["load_scale"] = col.load_scale;
      c["exhaustive"] = col.exhaustive;
      c["samples"] = col.samples;
      c["class_counts"] = col.class_counts;
      ordered_json acc;
      for (std::size_t i = 0; i < ml::kAllLearners.size(); ++i) {
        auto key = std::string(ml::slug(ml::kAllLearners[i]));
        acc[key] = col.test_accuracy[i] ? ordered_json(*col.test_accuracy[i]) : ordered_json(nullptr);
      }
      c["test_accuracy"] = std::move(acc);
      sweep.push_back(std::move(c));
    }
    j["scenarios"] = std::move(sweep);
  }
  return j.dump(2) + "\n";
}

std::string tuning_comparison_line(const TuneSummary& t) {
  std::ostringstream out;
  out << "tuned random forest: CV accuracy " << fmt4(t.best_cv_accuracy) << " vs default "
      << fmt4(t.default_cv_accuracy) << " (" << (t.best_cv_accuracy >= t.default_cv_accuracy ? "+" : "")
      << fmt4(t.best_cv_accuracy - t.default_cv_accuracy) << ")";
  if (t.test_accuracy) out << ", test accuracy " << fmt4(*t.test_accuracy);
  return out.str();
}

std::string report_markdown(const RunReport& r) {
  std::ostringstream out;
  out << "# Onset-time classification report\n\n";
  out << "Seed: " << r.seed << "\n\n";

  if (r.dataset) {
    const auto& d = *r.dataset;
    out << "## Dataset\n\n";
    out << "| Samples | Features | Train | Test | Class 1 | Class 2 | Class 3 | Majority baseline |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    out << "| " << d.samples << " | " << d.feature_dim << " | " << d.train_samples << " | "
        << d.test_samples << " | " << d.class_counts[0] << " | " << d.class_counts[1] << " | "
        << d.class_counts[2] << " | " << fmt4(d.majority_baseline) << " |\n\n";
  }

  if (!r.models.rows.empty()) {
    out << "## Model comparison\n\n";
    out << "| Model | Train Accuracy | Test Accuracy | Train Time (s) | Test Time (s) |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& row : r.models.rows) {
      out << "| " << ml::display_name(row.kind) << " | ";
      if (row.ok) {
        out << fmt4(row.train_accuracy) << " | " << fmt4(row.test_accuracy) << " | "
            << text::format_fixed(row.train_seconds, 6) << " | "
            << text::format_fixed(row.test_seconds, 6) << " |\n";
      } else {
        out << "failed | failed | - | - |\n";
      }
    }
    out << "\n";
    for (const auto& row : r.models.rows) {
      if (!row.ok) out << "- " << ml::display_name(row.kind) << " failed: " << row.error << "\n";
    }
  }

  if (r.tune) {
    const auto& t = *r.tune;
    out << "## Random forest tuning\n\n";
    out << "| Parameter | Search Space | Optimal Value |\n";
    out << "|---|---|---|\n";
    out << "| N_T | " << join_levels(t.space.n_trees) << " | " << t.best_config.n_trees << " |\n";
    out << "| max_depth | " << join_levels(t.space.max_depth) << " | " << t.best_config.max_depth << " |\n";
    out << "| min_samples_split | " << join_levels(t.space.min_samples_split) << " | "
        << t.best_config.min_samples_split << " |\n";
    out << "| min_samples_leaf | " << join_levels(t.space.min_samples_leaf) << " | "
        << t.best_config.min_samples_leaf << " |\n";
    out << "| max_features | " << join_levels(t.space.feature_rule) << " | "
        << ml::to_string(t.best_config.feature_rule) << " |\n";
    out << "| bootstrap | " << join_levels(t.space.bootstrap) << " | "
        << bool_str(t.best_config.bootstrap) << " |\n\n";
    out << "| Evaluations | Failed | Folds | Default CV Accuracy | Best CV Accuracy | Test Accuracy |\n";
    out << "|---|---|---|---|---|---|\n";
    out << "| " << t.evaluations << " | " << t.failed_evaluations << " | " << t.folds << " | "
        << fmt4(t.default_cv_accuracy) << " | " << fmt4(t.best_cv_accuracy) << " | "
        << (t.test_accuracy ? fmt4(*t.test_accuracy) : "-") << " |\n\n";
    out << tuning_comparison_line(t) << "\n\n";
  }

  if (!r.models.scenarios.empty()) {
    out << "## Contingency-order sweep\n\n";
    out << "| Model |";
    for (const auto& col : r.models.scenarios) out << " " << col.name << " Accuracy |";
    out << "\n|---|";
    for (std::size_t i = 0; i < r.models.scenarios.size(); ++i) out << "---|";
    out << "\n";
    for (std::size_t m = 0; m < ml::kAllLearners.size(); ++m) {
      out << "| " << ml::display_name(ml::kAllLearners[m]) << " |";
      for (const auto& col : r.models.scenarios) {
        out << " " << (col.test_accuracy[m] ? fmt4(*col.test_accuracy[m]) : "failed") << " |";
      }
      out << "\n";
    }
    out << "\n| Scenario | k | Load scale | Samples | Exhaustive | Class 1 | Class 2 | Class 3 |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& col : r.models.scenarios) {
      out << "| " << col.name << " | " << col.k << " | " << fmt4(col.load_scale) << " | "
          << col.samples << " | " << bool_str(col.exhaustive) << " | " << col.class_counts[0]
          << " | " << col.class_counts[1] << " | " << col.class_counts[2] << " |\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace onset::report

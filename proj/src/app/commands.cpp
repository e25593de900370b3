#include "onset/app/commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "onset/features/dataset.hpp"
#include "onset/grid/grid_case.hpp"
#include "onset/hpo/bayes_opt.hpp"
#include "onset/hpo/tune.hpp"
#include "onset/ml/model.hpp"
#include "onset/report/compare.hpp"
#include "onset/report/pca.hpp"
#include "onset/report/writers.hpp"
#include "onset/sim/contingency.hpp"
#include "onset/sim/scenarios.hpp"
#include "onset/util/rng.hpp"
#include "onset/util/text.hpp"

#ifndef ONSET_VERSION
#define ONSET_VERSION "0.0.0"
#endif

namespace onset::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string out_path(const RunConfig& cfg, const std::string& rel) {
  return (fs::path(cfg.output_dir) / rel).string();
}

std::string read_input(const RunConfig& cfg, const std::string& rel, const char* producer) {
  auto path = out_path(cfg, rel);
  if (!fs::is_regular_file(path)) {
    throw StageError("missing " + path + " (run '" + producer + "' first)");
  }
  return text::read_file(path);
}

std::string counts_str(const std::array<std::size_t, sim::kNumClasses>& counts) {
  std::ostringstream out;
  for (auto c : sim::kAllClasses) {
    out << (c == sim::kAllClasses.front() ? "" : ", ") << "class " << sim::class_code(c) << ": "
        << counts[static_cast<std::size_t>(sim::class_index(c))];
  }
  return out.str();
}

grid::GridCase load_case(const RunConfig& cfg) {
  validate(cfg, true);
  try {
    return grid::load_grid_case(cfg.grid_case);
  } catch (const grid::GridError& e) {
    throw ConfigError(cfg.grid_case + ": " + e.what());
  }
}

// ---- stages -------------------------------------------------------------

std::array<std::size_t, sim::kNumClasses> stage_simulate(const RunConfig& cfg, std::ostream& log) {
  auto c = load_case(cfg);
  std::vector<sim::ContingencySpec> specs;
  if (cfg.mode == ContingencyMode::Exhaustive) {
    specs = sim::enumerate_contingencies(c, cfg.k);
  } else {
    specs = sim::sample_contingencies(c, cfg.k, cfg.samples, derive_seed(cfg.seed, "sim"));
  }
  auto outcomes = sim::simulate_scenarios(c, specs, cfg.sim, cfg.workers);
  text::write_file(out_path(cfg, "contingencies.csv"), sim::format_contingencies_csv(specs));
  text::write_file(out_path(cfg, "profiles.csv"), sim::format_profiles_csv(outcomes));
  text::write_file(out_path(cfg, "labels.csv"), sim::format_labels_csv(outcomes));

  std::array<std::size_t, sim::kNumClasses> counts{};
  for (const auto& o : outcomes) ++counts[static_cast<std::size_t>(sim::class_index(o.label))];
  log << "simulate: " << outcomes.size() << " contingencies (k=" << cfg.k << "), "
      << counts_str(counts) << "\n";
  return counts;
}

features::Dataset stage_featurize(const RunConfig& cfg, std::ostream& log) {
  auto c = load_case(cfg);
  auto specs = sim::parse_contingencies_csv(read_input(cfg, "contingencies.csv", "simulate"));
  auto labels = sim::parse_labels_csv(read_input(cfg, "labels.csv", "simulate"));
  if (specs.size() != labels.size()) {
    throw StageError("contingencies.csv has " + std::to_string(specs.size()) +
                     " rows but labels.csv has " + std::to_string(labels.size()));
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (labels[i].id != static_cast<long>(i)) {
      throw StageError("labels.csv row " + std::to_string(i + 1) + " has contingency id " +
                       std::to_string(labels[i].id) + ", expected " + std::to_string(i));
    }
    try {
      sim::validate(specs[i], c);
    } catch (const std::exception& e) {
      throw StageError("contingency " + std::to_string(i) + " does not match the grid case: " + e.what());
    }
  }
  auto feats = features::featurize(c, specs, cfg.workers);
  features::Dataset data(c.branches().size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    data.add({std::move(feats[i]), labels[i].label, static_cast<long>(i)});
  }
  text::write_file(out_path(cfg, "dataset.csv"), features::format_dataset_csv(data));
  log << "featurize: " << data.size() << " samples x " << data.feature_dim() << " features\n";
  return data;
}

features::Dataset load_dataset(const RunConfig& cfg) {
  return features::parse_dataset_csv(read_input(cfg, "dataset.csv", "featurize"));
}

struct Partitions {
  ml::LabeledData train, test;
  report::DatasetSummary summary;
};

Partitions make_partitions(const RunConfig& cfg, const features::Dataset& data) {
  auto [train, test] = features::split(data, cfg.train_fraction, derive_seed(cfg.seed, "split"));
  if (train.empty() || test.empty()) throw StageError("split left an empty partition");
  Partitions p{train.to_labeled(), test.to_labeled(), {}};
  p.summary.samples = data.size();
  p.summary.feature_dim = data.feature_dim();
  p.summary.train_samples = train.size();
  p.summary.test_samples = test.size();
  p.summary.class_counts = data.class_counts();
  p.summary.majority_baseline = report::majority_baseline(p.train, p.test);
  return p;
}

std::string model_file(ml::LearnerKind kind) {
  return "models/" + std::string(ml::slug(kind)) + ".json";
}

// Returns the number of learners that trained successfully.
std::size_t stage_train(const RunConfig& cfg, std::ostream& log) {
  validate(cfg, false);
  auto data = load_dataset(cfg);
  auto parts = make_partitions(cfg, data);
  const auto seed = derive_seed(cfg.seed, "learners");

  ordered_json status = ordered_json::array();
  std::size_t ok = 0;
  for (auto kind : ml::kAllLearners) {
    auto path = out_path(cfg, model_file(kind));
    ordered_json entry{{"model", ml::slug(kind)}};
    try {
      auto model = ml::train_model(kind, parts.train, cfg.learners, derive_seed(seed, ml::slug(kind)),
                                   cfg.workers);
      ml::save_model(model, path);
      entry["ok"] = true;
      entry["train_seconds"] = model.meta.train_seconds;
      ++ok;
    } catch (const std::exception& e) {
      std::error_code ec;
      fs::remove(path, ec);
      entry["ok"] = false;
      entry["error"] = e.what();
      log << "train: " << ml::display_name(kind) << " failed: " << e.what() << "\n";
    }
    status.push_back(std::move(entry));
  }
  text::write_file(out_path(cfg, "models/training.json"), status.dump(2) + "\n");
  log << "train: " << ok << " of " << ml::kAllLearners.size() << " models trained on "
      << parts.train.rows() << " samples\n";
  return ok;
}

struct Evaluation {
  report::ModelReport models;
  report::DatasetSummary summary;
};

Evaluation stage_evaluate(const RunConfig& cfg, std::ostream& log) {
  validate(cfg, false);
  auto data = load_dataset(cfg);
  auto parts = make_partitions(cfg, data);

  Evaluation ev;
  ev.summary = parts.summary;
  for (auto kind : ml::kAllLearners) {
    auto path = out_path(cfg, model_file(kind));
    report::ModelRow row;
    row.kind = kind;
    try {
      if (!fs::is_regular_file(path)) throw StageError("no trained model file");
      auto model = ml::load_model(path);
      if (model.meta.kind != kind) throw StageError("model file holds a different learner");
      row = report::evaluate_model(model, parts.train, parts.test);
      text::write_file(out_path(cfg, "report/confusion_" + std::string(ml::slug(kind)) + ".csv"),
                       report::format_confusion_csv(row.test_confusion));
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    ev.models.rows.push_back(std::move(row));
  }

  report::RunReport rr;
  rr.seed = cfg.seed;
  rr.dataset = ev.summary;
  rr.models = ev.models;
  text::write_file(out_path(cfg, "report/evaluation.json"), report::report_json(rr));
  text::write_file(out_path(cfg, "report/evaluation.md"), report::report_markdown(rr));

  if (cfg.embedding) {
    try {
      auto emb = report::pca_embedding(data, 3);
      text::write_file(out_path(cfg, "report/embedding.csv"), report::format_embedding_csv(emb));
    } catch (const std::invalid_argument& e) {
      log << "evaluate: embedding skipped: " << e.what() << "\n";
    }
  }

  std::size_t ok = 0;
  for (const auto& row : ev.models.rows) {
    if (row.ok) {
      ++ok;
      log << "evaluate: " << ml::display_name(row.kind) << " test accuracy "
          << text::format_fixed(row.test_accuracy, 4) << "\n";
    } else {
      log << "evaluate: " << ml::display_name(row.kind) << " failed: " << row.error << "\n";
    }
  }
  log << "evaluate: majority-class baseline " << text::format_fixed(ev.summary.majority_baseline, 4)
      << "\n";
  if (ok == 0) throw StageError("no model could be evaluated");
  return ev;
}

report::TuneSummary stage_tune(const RunConfig& cfg, std::ostream& log) {
  validate(cfg, false);
  auto data = load_dataset(cfg);
  auto parts = make_partitions(cfg, data);

  hpo::SearchSpace space;
  hpo::TuneOptions opts;
  opts.budget = cfg.hpo_budget;
  opts.folds = cfg.hpo_folds;
  opts.n_init = cfg.hpo_n_init;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;
  opts.kernel = cfg.kernel;
  auto result = hpo::tune_random_forest(parts.train, &parts.test, space, opts);
  auto summary = report::summarize_tuning(result, space, cfg.hpo_folds, &parts.test);

  ml::ClassifierModel tuned;
  tuned.model = result.final_model;
  tuned.meta.kind = ml::LearnerKind::RandomForest;
  tuned.meta.seed = derive_seed(cfg.seed, "rf");
  tuned.meta.config_json = ml::config_to_json(result.best_config);
  tuned.meta.train_seconds = result.train_seconds;

  text::write_file(out_path(cfg, "tune/trace.csv"), hpo::format_trace_csv(result.search, cfg.hpo_folds));
  ml::save_model(tuned, out_path(cfg, "tune/tuned_model.json"));
  if (summary.test_confusion) {
    text::write_file(out_path(cfg, "tune/confusion_tuned.csv"),
                     report::format_confusion_csv(*summary.test_confusion));
  }
  report::RunReport rr;
  rr.seed = cfg.seed;
  rr.dataset = parts.summary;
  rr.tune = summary;
  text::write_file(out_path(cfg, "tune/tuning.json"), report::report_json(rr));
  text::write_file(out_path(cfg, "tune/tuning.md"), report::report_markdown(rr));

  log << "tune: " << summary.evaluations << " evaluations (" << summary.failed_evaluations
      << " failed), best " << ml::to_string(summary.best_config) << "\n";
  log << "tune: " << report::tuning_comparison_line(summary) << "\n";
  return summary;
}

std::vector<report::ScenarioColumn> stage_sweep(const RunConfig& cfg, std::ostream& log) {
  auto c = load_case(cfg);
  report::SweepOptions opts;
  opts.scenarios = report::sweep_scenarios(cfg.sweep_ks, cfg.sweep_modified_scale);
  opts.samples_per_scenario = cfg.sweep_samples;
  opts.train_fraction = cfg.train_fraction;
  opts.sim = cfg.sim;
  opts.learners = cfg.learners;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;
  auto columns = report::k_sweep(c, opts);

  report::RunReport rr;
  rr.seed = cfg.seed;
  rr.models.scenarios = columns;
  text::write_file(out_path(cfg, "sweep/sweep.json"), report::report_json(rr));
  text::write_file(out_path(cfg, "sweep/sweep.md"), report::report_markdown(rr));
  for (const auto& col : columns) {
    log << "sweep: " << col.name << " " << col.samples << " samples ("
        << (col.exhaustive ? "exhaustive" : "sampled") << "), " << counts_str(col.class_counts)
        << "\n";
  }
  return columns;
}

// ---- error mapping -------------------------------------------------------

int guarded(const char* stage, std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << stage << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << stage << ": " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("simulate", err, [&] {
    stage_simulate(cfg, log);
    return kExitOk;
  });
}

int cmd_featurize(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("featurize", err, [&] {
    stage_featurize(cfg, log);
    return kExitOk;
  });
}

int cmd_train(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("train", err, [&] {
    if (stage_train(cfg, log) == 0) throw StageError("every learner failed to train");
    return kExitOk;
  });
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("evaluate", err, [&] {
    stage_evaluate(cfg, log);
    return kExitOk;
  });
}

int cmd_tune(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("tune", err, [&] {
    stage_tune(cfg, log);
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded("sweep", err, [&] {
    stage_sweep(cfg, log);
    return kExitOk;
  });
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  const char* stage = "config";
  try {
    validate(cfg, true);
    stage = "simulate";
    stage_simulate(cfg, log);
    stage = "featurize";
    stage_featurize(cfg, log);
    stage = "train";
    if (stage_train(cfg, log) == 0) throw StageError("every learner failed to train");
    stage = "evaluate";
    auto ev = stage_evaluate(cfg, log);
    stage = "tune";
    auto tune = stage_tune(cfg, log);
    stage = "sweep";
    auto columns = stage_sweep(cfg, log);

    stage = "report";
    report::RunReport rr;
    rr.seed = cfg.seed;
    rr.dataset = ev.summary;
    rr.models = ev.models;
    rr.models.scenarios = std::move(columns);
    rr.tune = tune;
    text::write_file(out_path(cfg, "report.json"), report::report_json(rr));
    text::write_file(out_path(cfg, "report.md"), report::report_markdown(rr));
    log << "pipeline: reports written to " << out_path(cfg, "report.md") << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: pipeline stage " << stage << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: pipeline stage " << stage << ": " << e.what() << "\n";
    return kExitRuntime;
  }
}

std::string version_string() {
  return std::string("onset ") + ONSET_VERSION + " (model format " +
         std::to_string(ml::kModelFormatVersion) + ", report schema " +
         std::to_string(report::kReportSchemaVersion) + ")";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cascading-failure onset-time classification toolkit", "onset"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and schema versions");

  struct Common {
    std::string config, out, grid;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::vector<std::string> sets;
    bool print_config = false;
  } common;

  using Handler = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands{
      {"simulate", "Run the cascade simulation and write profiles and labels", cmd_simulate},
      {"featurize", "Build the delta-flow dataset from simulated contingencies", cmd_featurize},
      {"train", "Train all six learners on the training split", cmd_train},
      {"evaluate", "Evaluate trained models and write the comparison report", cmd_evaluate},
      {"tune", "Tune the random forest by Bayesian optimization", cmd_tune},
      {"sweep", "Repeat the model comparison across contingency orders", cmd_sweep},
      {"pipeline", "Run every stage in sequence", cmd_pipeline},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, handler] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", common.config, "key=value configuration file");
    sub->add_option("--seed", common.seed, "Master seed");
    sub->add_option("--out", common.out, "Output directory");
    sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
    sub->add_option("--grid", common.grid, "Grid case file");
    sub->add_option("--set", common.sets, "Override a config key (key=value), repeatable");
    sub->add_flag("--print-config", common.print_config, "Print the effective configuration and exit");
    subs.push_back(sub);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (show_version) {
    out << version_string() << "\n";
    return kExitOk;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    RunConfig cfg;
    try {
      if (!common.config.empty()) cfg = load_run_config(common.config);
      for (const auto& s : common.sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
      }
      if (common.seed) cfg.seed = *common.seed;
      if (common.workers) cfg.workers = *common.workers;
      if (!common.out.empty()) cfg.output_dir = common.out;
      if (!common.grid.empty()) cfg.grid_case = common.grid;
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << "\n";
      return kExitConfig;
    }
    if (common.print_config) {
      out << format_run_config(cfg);
      return kExitOk;
    }
    return std::get<2>(commands[i])(cfg, out, err);
  }
  out << app.help();
  return kExitConfig;
}

}  // namespace onset::app

#include "onset/app/config.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "onset/util/text.hpp"

namespace onset::app {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const std::string& why) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " + why);
}

double as_double(std::string_view key, std::string_view v) {
  try {
    return text::parse_double(v);
  } catch (const std::exception& e) {
    bad_value(key, v, e.what());
  }
}

long long as_int(std::string_view key, std::string_view v) {
  try {
    return text::parse_int(v);
  } catch (const std::exception& e) {
    bad_value(key, v, e.what());
  }
}

int as_int32(std::string_view key, std::string_view v) {
  auto x = as_int(key, v);
  if (x < -2147483647LL || x > 2147483647LL) bad_value(key, v, "out of range");
  return static_cast<int>(x);
}

std::size_t as_count(std::string_view key, std::string_view v) {
  auto x = as_int(key, v);
  if (x < 0) bad_value(key, v, "must be nonnegative");
  return static_cast<std::size_t>(x);
}

bool as_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "expected true or false");
}

ml::FeatureRule as_rule(std::string_view key, std::string_view v) {
  try {
    return ml::feature_rule_from_string(v);
  } catch (const std::exception& e) {
    bad_value(key, v, e.what());
  }
}

std::string rule_str(ml::FeatureRule r) { return std::string(ml::to_string(r)); }
std::string bool_str(bool b) { return b ? "true" : "false"; }

struct Key {
  std::function<void(RunConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define INT_KEY(field) \
  Key{[](RunConfig& c, std::string_view k, std::string_view v) { c.field = as_int32(k, v); }, \
      [](const RunConfig& c) { return std::to_string(c.field); }}
#define DOUBLE_KEY(field) \
  Key{[](RunConfig& c, std::string_view k, std::string_view v) { c.field = as_double(k, v); }, \
      [](const RunConfig& c) { return text::format_shortest(c.field); }}
#define COUNT_KEY(field) \
  Key{[](RunConfig& c, std::string_view k, std::string_view v) { c.field = as_count(k, v); }, \
      [](const RunConfig& c) { return std::to_string(c.field); }}

const std::map<std::string, Key, std::less<>>& keys() {
  static const std::map<std::string, Key, std::less<>> table{
      {"grid.case", {[](RunConfig& c, std::string_view, std::string_view v) { c.grid_case = v; },
                     [](const RunConfig& c) { return c.grid_case; }}},
      {"output.dir", {[](RunConfig& c, std::string_view, std::string_view v) { c.output_dir = v; },
                      [](const RunConfig& c) { return c.output_dir; }}},
      {"run.seed",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          auto x = as_int(k, v);
          if (x < 0) bad_value(k, v, "must be nonnegative");
          c.seed = static_cast<std::uint64_t>(x);
        },
        [](const RunConfig& c) { return std::to_string(c.seed); }}},
      {"run.workers",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          c.workers = static_cast<unsigned>(as_count(k, v));
        },
        [](const RunConfig& c) { return std::to_string(c.workers); }}},
      {"contingency.k", INT_KEY(k)},
      {"contingency.mode",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          if (v == "exhaustive") c.mode = ContingencyMode::Exhaustive;
          else if (v == "sampled") c.mode = ContingencyMode::Sampled;
          else bad_value(k, v, "expected exhaustive or sampled");
        },
        [](const RunConfig& c) {
          return std::string(c.mode == ContingencyMode::Exhaustive ? "exhaustive" : "sampled");
        }}},
      {"contingency.samples", COUNT_KEY(samples)},
      {"cascade.tau0_min", DOUBLE_KEY(sim.cascade.tau0_min)},
      {"cascade.horizon_min", DOUBLE_KEY(sim.cascade.horizon_min)},
      {"cascade.max_steps", INT_KEY(sim.cascade.max_steps)},
      {"onset.window_min", DOUBLE_KEY(sim.onset.window_min)},
      {"onset.min_failures", INT_KEY(sim.onset.min_failures_in_window)},
      {"labeling.t_c1", DOUBLE_KEY(sim.labeling.t_c1_min)},
      {"labeling.t_c2", DOUBLE_KEY(sim.labeling.t_c2_min)},
      {"split.train_fraction", DOUBLE_KEY(train_fraction)},
      {"tree.max_depth", INT_KEY(learners.tree.max_depth)},
      {"tree.min_samples_split", INT_KEY(learners.tree.min_samples_split)},
      {"tree.min_samples_leaf", INT_KEY(learners.tree.min_samples_leaf)},
      {"tree.feature_rule",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          c.learners.tree.feature_rule = as_rule(k, v);
        },
        [](const RunConfig& c) { return rule_str(c.learners.tree.feature_rule); }}},
      {"forest.n_trees", INT_KEY(learners.forest.n_trees)},
      {"forest.max_depth", INT_KEY(learners.forest.max_depth)},
      {"forest.min_samples_split", INT_KEY(learners.forest.min_samples_split)},
      {"forest.min_samples_leaf", INT_KEY(learners.forest.min_samples_leaf)},
      {"forest.feature_rule",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          c.learners.forest.feature_rule = as_rule(k, v);
        },
        [](const RunConfig& c) { return rule_str(c.learners.forest.feature_rule); }}},
      {"forest.bootstrap",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          c.learners.forest.bootstrap = as_bool(k, v);
        },
        [](const RunConfig& c) { return bool_str(c.learners.forest.bootstrap); }}},
      {"knn.k", INT_KEY(learners.knn.k)},
      {"logreg.learning_rate", DOUBLE_KEY(learners.logreg.learning_rate)},
      {"logreg.epochs", INT_KEY(learners.logreg.epochs)},
      {"logreg.l2", DOUBLE_KEY(learners.logreg.l2)},
      {"mlp.hidden_units", INT_KEY(learners.mlp.hidden_units)},
      {"mlp.learning_rate", DOUBLE_KEY(learners.mlp.learning_rate)},
      {"mlp.epochs", INT_KEY(learners.mlp.epochs)},
      {"mlp.batch_size", INT_KEY(learners.mlp.batch_size)},
      {"mlp.l2", DOUBLE_KEY(learners.mlp.l2)},
      {"hpo.budget", INT_KEY(hpo_budget)},
      {"hpo.folds", INT_KEY(hpo_folds)},
      {"hpo.n_init", INT_KEY(hpo_n_init)},
      {"hpo.lengthscale", DOUBLE_KEY(kernel.lengthscale)},
      {"hpo.noise_variance", DOUBLE_KEY(kernel.noise_variance)},
      {"sweep.ks",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          std::vector<int> ks;
          for (auto part : text::split(v, ',')) ks.push_back(as_int32(k, text::trim(part)));
          c.sweep_ks = std::move(ks);
        },
        [](const RunConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < c.sweep_ks.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(c.sweep_ks[i]);
          }
          return out;
        }}},
      {"sweep.samples", COUNT_KEY(sweep_samples)},
      {"sweep.modified_scale",
       {[](RunConfig& c, std::string_view k, std::string_view v) {
          if (v == "none") c.sweep_modified_scale.reset();
          else c.sweep_modified_scale = as_double(k, v);
        },
        [](const RunConfig& c) {
          return c.sweep_modified_scale ? text::format_shortest(*c.sweep_modified_scale)
                                        : std::string("none");
        }}},
      {"report.embedding",
       {[](RunConfig& c, std::string_view k, std::string_view v) { c.embedding = as_bool(k, v); },
        [](const RunConfig& c) { return bool_str(c.embedding); }}},
  };
  return table;
}

#undef INT_KEY
#undef DOUBLE_KEY
#undef COUNT_KEY

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  auto it = keys().find(key);
  if (it == keys().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second.set(cfg, key, text::trim(value));
}

RunConfig parse_run_config(std::string_view text_in, const std::string& base_dir) {
  RunConfig cfg;
  auto lines = text::split_lines(text_in);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value at line " + std::to_string(i + 1));
    }
    apply_setting(cfg, text::trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  if (!cfg.grid_case.empty() && !base_dir.empty() && fs::path(cfg.grid_case).is_relative()) {
    cfg.grid_case = (fs::path(base_dir) / cfg.grid_case).lexically_normal().string();
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::string contents;
  try {
    contents = text::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot read config file " + path);
  }
  return parse_run_config(contents, fs::path(path).parent_path().string());
}

std::string format_run_config(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& [name, key] : keys()) out << name << '=' << key.get(cfg) << '\n';
  return out.str();
}

void validate(const RunConfig& cfg, bool need_grid) {
  if (need_grid) {
    require(!cfg.grid_case.empty(), "grid.case is not set");
    require(fs::is_regular_file(cfg.grid_case), "grid case file not found: " + cfg.grid_case);
  }
  require(!cfg.output_dir.empty(), "output.dir is empty");
  require(cfg.k >= 2, "contingency.k must be at least 2");
  require(cfg.mode == ContingencyMode::Exhaustive || cfg.samples > 0,
          "contingency.samples must be positive");
  require(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0,
          "split.train_fraction must lie in (0, 1)");
  require(cfg.hpo_folds >= 2, "hpo.folds must be at least 2");
  require(cfg.hpo_n_init >= 2, "hpo.n_init must be at least 2");
  require(cfg.hpo_budget >= cfg.hpo_n_init, "hpo.budget must be at least hpo.n_init");
  require(cfg.kernel.lengthscale > 0.0, "hpo.lengthscale must be positive");
  require(cfg.kernel.noise_variance >= 0.0, "hpo.noise_variance must be nonnegative");
  require(!cfg.sweep_ks.empty(), "sweep.ks is empty");
  for (int k : cfg.sweep_ks) require(k >= 2, "sweep.ks entries must be at least 2");
  require(cfg.sweep_samples > 0, "sweep.samples must be positive");
  require(!cfg.sweep_modified_scale || *cfg.sweep_modified_scale > 0.0,
          "sweep.modified_scale must be positive");
  try {
    sim::validate(cfg.sim.cascade);
    sim::validate(cfg.sim.onset);
    sim::validate(cfg.sim.labeling);
    ml::validate(cfg.learners.tree);
    ml::validate(cfg.learners.forest);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(cfg.learners.knn.k >= 1, "knn.k must be positive");
  require(cfg.learners.logreg.epochs >= 0 && cfg.learners.logreg.learning_rate > 0.0,
          "logreg settings out of range");
  require(cfg.learners.mlp.hidden_units >= 1 && cfg.learners.mlp.batch_size >= 1 &&
              cfg.learners.mlp.epochs >= 0 && cfg.learners.mlp.learning_rate > 0.0,
          "mlp settings out of range");
}

}  // namespace onset::app

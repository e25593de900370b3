#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onset/hpo/gp.hpp"
#include "onset/ml/model.hpp"
#include "onset/sim/scenarios.hpp"

namespace onset::app {

/// Bad configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ContingencyMode { Exhaustive, Sampled };

struct RunConfig {
  std::string grid_case;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  unsigned workers = 1;

  int k = 2;
  ContingencyMode mode = ContingencyMode::Exhaustive;
  std::size_t samples = 500;  // sampled mode only

  sim::SimulationConfig sim;
  double train_fraction = 0.7;
  ml::LearnerSuiteConfig learners;

  int hpo_budget = 50;
  int hpo_folds = 3;
  int hpo_n_init = 11;
  hpo::KernelConfig kernel;

  std::vector<int> sweep_ks{2, 3, 4, 5, 6};
  std::size_t sweep_samples = 400;
  std::optional<double> sweep_modified_scale = 1.1;

  bool embedding = true;
};

/// Sets one `section.key` value; throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat `section.key = value` lines; '#' starts a comment. A relative
/// grid.case is resolved against `base_dir`.
RunConfig parse_run_config(std::string_view text, const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);

/// Every recognized key with its current value, one `key=value` per line.
std::string format_run_config(const RunConfig& cfg);

/// Range checks, 0 < t_c1 < t_c2, and (when `need_grid`) that the grid
/// case file exists. Throws ConfigError.
void validate(const RunConfig& cfg, bool need_grid);

}  // namespace onset::app

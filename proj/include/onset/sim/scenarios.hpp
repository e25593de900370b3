#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onset/sim/cascade.hpp"
#include "onset/sim/contingency.hpp"
#include "onset/sim/onset.hpp"

namespace onset::sim {

/// Simulation result for one contingency; `id` is its position in the input list.
struct ScenarioOutcome {
  long id = 0;
  FailureProfile profile;
  std::optional<double> onset_min;
  OnsetClass label = OnsetClass::NonCritical;
};

struct SimulationConfig {
  CascadeConfig cascade;
  OnsetConfig onset;
  LabelingConfig labeling;
};

/// Runs the cascade for every spec (in parallel); output order follows `specs`.
std::vector<ScenarioOutcome> simulate_scenarios(const grid::GridCase& c,
                                                const std::vector<ContingencySpec>& specs,
                                                const SimulationConfig& cfg, unsigned workers = 1);

// CSV records exchanged between pipeline stages.
//   contingencies: contingency_id,k,removed_branch_ids   (ids joined by ';')
//   profiles:      contingency_id,time_min,cumulative_failed
//   labels:        contingency_id,onset_min,class        (onset -1 when absent)
std::string format_contingencies_csv(const std::vector<ContingencySpec>& specs);
std::vector<ContingencySpec> parse_contingencies_csv(const std::string& text);

std::string format_profiles_csv(const std::vector<ScenarioOutcome>& outcomes);

struct LabelRecord {
  long id = 0;
  std::optional<double> onset_min;
  OnsetClass label = OnsetClass::NonCritical;
};
std::string format_labels_csv(const std::vector<ScenarioOutcome>& outcomes);
std::vector<LabelRecord> parse_labels_csv(const std::string& text);

}  // namespace onset::sim

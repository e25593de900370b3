#pragma once

#include <vector>

#include "onset/grid/grid_case.hpp"
#include "onset/sim/contingency.hpp"

namespace onset::sim {

struct CascadeConfig {
  double tau0_min = 10.0;     // inverse-time trip constant
  double horizon_min = 5000.0;
  int max_steps = 0;          // 0 selects 10 x branch count
};

/// One batch of simultaneous trips (the t=0 event holds the initial removals).
struct FailureEvent {
  double time_min = 0.0;
  int cumulative_failed = 0;
  std::vector<int> tripped_branch_ids;
};

enum class StopReason { NoOverload, Horizon, MaxSteps };

/// Step function of cumulative failed lines over simulated minutes.
/// Times strictly increase, counts never decrease, and the first event is
/// (0, k).
struct FailureProfile {
  std::vector<FailureEvent> events;
  double horizon_min = 0.0;
  StopReason stop = StopReason::NoOverload;
};

/// Relative tolerance under which two trip delays count as simultaneous.
inline constexpr double kTripTieTolerance = 1e-12;

/// Time until a branch carrying |flow| > rating trips: tau0 * rating / (|flow| - rating).
double trip_delay(double tau0_min, double rating_mw, double abs_flow_mw);

/// Quasi-steady overload cascade. After the initial removal the DC flow is
/// re-solved; every overloaded branch gets an inverse-time trip delay, the
/// branches whose delay is within kTripTieTolerance of the smallest trip
/// together, the clock advances by that delay, and the loop repeats until no
/// branch is overloaded, the next trip would fall beyond the horizon, or
/// max_steps batches have tripped.
FailureProfile run_cascade(const grid::GridCase& c, const ContingencySpec& spec,
                           const CascadeConfig& cfg = {});

void validate(const CascadeConfig& cfg);

}  // namespace onset::sim

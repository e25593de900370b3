#include "onset/sim/cascade.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "onset/grid/power_flow.hpp"

namespace onset::sim {

double trip_delay(double tau0_min, double rating_mw, double abs_flow_mw) {
  return tau0_min * rating_mw / (abs_flow_mw - rating_mw);
}

void validate(const CascadeConfig& cfg) {
  if (!(cfg.tau0_min > 0.0)) throw std::invalid_argument("cascade tau0 must be positive");
  if (!(cfg.horizon_min > 0.0)) throw std::invalid_argument("cascade horizon must be positive");
  if (cfg.max_steps < 0) throw std::invalid_argument("cascade max_steps must be >= 0");
}

FailureProfile run_cascade(const grid::GridCase& c, const ContingencySpec& spec,
                           const CascadeConfig& cfg) {
  validate(cfg);
  validate(spec, c);
  const int max_steps =
      cfg.max_steps > 0 ? cfg.max_steps : 10 * static_cast<int>(c.branch_count());

  FailureProfile profile;
  profile.horizon_min = cfg.horizon_min;
  profile.events.push_back({0.0, spec.k(), spec.removed_branch_ids});

  std::vector<int> removed = spec.removed_branch_ids;
  double now = 0.0;
  for (int step = 0;; ++step) {
    auto sol = grid::solve_dc_power_flow(c, removed);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> delays;
    for (std::size_t k = 0; k < c.branch_count(); ++k) {
      if (!sol.branch_in_service[k]) continue;
      const auto& br = c.branches()[k];
      double flow = std::abs(sol.branch_flow_mw[k]);
      if (!(flow > br.rating_mw)) continue;
      double tau = trip_delay(cfg.tau0_min, br.rating_mw, flow);
      delays.emplace_back(tau, br.id);
      best = std::min(best, tau);
    }
    // Delays equal up to rounding trip together.
    std::vector<int> batch;
    for (auto [tau, id] : delays) {
      if (tau <= best * (1.0 + kTripTieTolerance)) batch.push_back(id);
    }

    if (batch.empty()) {
      profile.stop = StopReason::NoOverload;
      break;
    }
    if (step >= max_steps) {
      profile.stop = StopReason::MaxSteps;
      break;
    }
    double next = now + best;
    if (next > cfg.horizon_min) {
      profile.stop = StopReason::Horizon;
      break;
    }
    // Keep event times strictly increasing even if the delay underflows.
    if (!(next > now)) next = std::nextafter(now, std::numeric_limits<double>::infinity());
    now = next;

    removed.insert(removed.end(), batch.begin(), batch.end());
    profile.events.push_back({now, static_cast<int>(removed.size()), std::move(batch)});
  }
  return profile;
}

}  // namespace onset::sim

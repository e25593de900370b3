#include "onset/sim/onset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace onset::sim {

OnsetClass class_from_code(int code) {
  if (code < 1 || code > 3) throw std::invalid_argument("unknown class code " + std::to_string(code));
  return static_cast<OnsetClass>(code);
}

OnsetClass class_from_index(int index) { return class_from_code(index + 1); }

std::string_view class_name(OnsetClass c) {
  switch (c) {
    case OnsetClass::NonCritical: return "non-critical";
    case OnsetClass::Critical: return "critical";
    case OnsetClass::RelativelyCritical: return "relatively critical";
  }
  return "?";
}

void validate(const OnsetConfig& cfg) {
  if (!(cfg.window_min > 0.0)) throw std::invalid_argument("onset window must be positive");
  if (cfg.min_failures_in_window < 1) {
    throw std::invalid_argument("onset min_failures_in_window must be >= 1");
  }
}

void validate(const LabelingConfig& cfg) {
  if (!(cfg.t_c1_min > 0.0 && cfg.t_c1_min < cfg.t_c2_min && std::isfinite(cfg.t_c2_min))) {
    throw std::invalid_argument("labeling requires 0 < t_c1 < t_c2");
  }
}

std::optional<double> detect_onset(const FailureProfile& profile, const OnsetConfig& cfg) {
  validate(cfg);
  const auto& ev = profile.events;
  // Two-pointer sweep over post-initial events; window is (t - w, t].
  std::size_t lo = 1;
  int in_window = 0;
  for (std::size_t hi = 1; hi < ev.size(); ++hi) {
    in_window += ev[hi].cumulative_failed - ev[hi - 1].cumulative_failed;
    while (lo < hi && ev[lo].time_min <= ev[hi].time_min - cfg.window_min) {
      in_window -= ev[lo].cumulative_failed - ev[lo - 1].cumulative_failed;
      ++lo;
    }
    if (in_window >= cfg.min_failures_in_window) return ev[hi].time_min;
  }
  return std::nullopt;
}

OnsetClass label(std::optional<double> onset_min, const LabelingConfig& cfg) {
  validate(cfg);
  if (!onset_min) return OnsetClass::NonCritical;
  double t = *onset_min;
  if (std::isnan(t) || t < 0.0) throw std::invalid_argument("negative onset time");
  if (t < cfg.t_c1_min) return OnsetClass::Critical;
  if (t < cfg.t_c2_min) return OnsetClass::RelativelyCritical;
  return OnsetClass::NonCritical;
}

}  // namespace onset::sim

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "onset/sim/cascade.hpp"

namespace onset::sim {

/// Urgency class of a contingency, by the interval its onset time falls in.
/// Serialized codes: NonCritical = 1, Critical = 2, RelativelyCritical = 3.
/// The class index used by the learners is code - 1.
enum class OnsetClass { NonCritical = 1, Critical = 2, RelativelyCritical = 3 };

inline constexpr int kNumClasses = 3;
inline constexpr std::array<OnsetClass, kNumClasses> kAllClasses{
    OnsetClass::NonCritical, OnsetClass::Critical, OnsetClass::RelativelyCritical};

constexpr int class_code(OnsetClass c) noexcept { return static_cast<int>(c); }
constexpr int class_index(OnsetClass c) noexcept { return static_cast<int>(c) - 1; }
OnsetClass class_from_code(int code);
OnsetClass class_from_index(int index);
std::string_view class_name(OnsetClass c);

struct OnsetConfig {
  double window_min = 50.0;
  int min_failures_in_window = 3;
};

struct LabelingConfig {
  double t_c1_min = 100.0;
  double t_c2_min = 1000.0;
};

void validate(const OnsetConfig& cfg);
void validate(const LabelingConfig& cfg);

/// Smallest event time t at which the failures in (t - window, t], not
/// counting the initial removals at t = 0, reach min_failures_in_window.
std::optional<double> detect_onset(const FailureProfile& profile, const OnsetConfig& cfg = {});

/// [0, t_c1) -> Critical, [t_c1, t_c2) -> RelativelyCritical,
/// [t_c2, inf) or no onset -> NonCritical. Negative onsets are rejected.
OnsetClass label(std::optional<double> onset_min, const LabelingConfig& cfg = {});

}  // namespace onset::sim

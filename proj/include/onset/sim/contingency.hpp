#pragma once

#include <cstdint>
#include <vector>

#include "onset/grid/grid_case.hpp"

namespace onset::sim {

/// Simultaneous outage of k >= 2 branches; ids are distinct and ascending.
struct ContingencySpec {
  std::vector<int> removed_branch_ids;
  int k() const noexcept { return static_cast<int>(removed_branch_ids.size()); }
  auto operator<=>(const ContingencySpec&) const = default;
};

/// Number of k-subsets of m items, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

/// All C(m, k) branch subsets in lexicographic order of ascending branch ids.
std::vector<ContingencySpec> enumerate_contingencies(const grid::GridCase& c, int k);

/// `n` distinct k-subsets drawn without replacement; deterministic in `seed`.
/// Throws std::invalid_argument when n > C(m, k).
std::vector<ContingencySpec> sample_contingencies(const grid::GridCase& c, int k, std::size_t n,
                                                  std::uint64_t seed);

/// Checks that every id exists and that the spec has k >= 2 distinct ids.
void validate(const ContingencySpec& spec, const grid::GridCase& c);

}  // namespace onset::sim

#pragma once

#include <string>

#include "onset/features/dataset.hpp"
#include "onset/grid/grid_case.hpp"
#include "onset/sim/contingency.hpp"

namespace fixtures {

inline std::string path(const char* name) { return std::string(ONSET_DATA_DIR) + "/" + name; }

inline onset::grid::GridCase grid24() { return onset::grid::load_grid_case(path("grid24.csv")); }

/// Exhaustive N-2 dataset on the 24-bus case (561 samples, 34 features).
inline const onset::features::Dataset& n2_dataset() {
  static const auto data = [] {
    auto c = grid24();
    return onset::features::assemble_dataset(c, onset::sim::enumerate_contingencies(c, 2), {});
  }();
  return data;
}

/// True when no two rows share a feature vector but differ in label.
inline bool consistent(const onset::ml::LabeledData& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = i + 1; j < d.rows(); ++j) {
      if (d.y[i] != d.y[j] && d.x.row(static_cast<long>(i)) == d.x.row(static_cast<long>(j))) return false;
    }
  }
  return true;
}

}  // namespace fixtures

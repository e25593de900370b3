#pragma once

#include <Eigen/Core>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "onset/grid/grid_case.hpp"
#include "onset/grid/power_flow.hpp"

namespace onset::features {

/// Bus-by-bus antisymmetric matrix of branch quantities: at(i, j) is the
/// value in the i -> j direction and at(j, i) == -at(i, j). Entries are
/// nonzero only on bus pairs joined by a branch of the base topology.
class BusPairMatrix {
 public:
  explicit BusPairMatrix(const grid::GridCase& c);

  double at(int bus_i, int bus_j) const;
  /// Value stored in the min(i,j) -> max(i,j) orientation.
  double canonical(int bus_i, int bus_j) const;
  void set(int from_bus, int to_bus, double value);

  const std::vector<int>& bus_ids() const noexcept { return bus_ids_; }
  const Eigen::MatrixXd& dense() const noexcept { return values_; }
  /// Bus pairs (min, max) of the base topology, ascending.
  const std::vector<std::pair<int, int>>& support() const noexcept { return support_; }

  bool same_shape(const BusPairMatrix& other) const;

 protected:
  std::vector<int> bus_ids_;
  std::unordered_map<int, Eigen::Index> pos_;
  std::vector<std::pair<int, int>> support_;
  Eigen::MatrixXd values_;
};

/// Signed MW branch flows of one steady state.
class PowerMatrix : public BusPairMatrix {
 public:
  using BusPairMatrix::BusPairMatrix;
};

/// Contingency-state minus base-state power matrix.
class DeltaMatrix : public BusPairMatrix {
 public:
  using BusPairMatrix::BusPairMatrix;
  static DeltaMatrix zeros_like(const BusPairMatrix& shape) { return DeltaMatrix(shape); }

 private:
  explicit DeltaMatrix(const BusPairMatrix& shape) : BusPairMatrix(shape) { values_.setZero(); }
};

/// Feature vector: one entry per base branch, ordered by ascending branch id.
using FeatureVector = std::vector<double>;

/// Entry per base branch = that branch's flow (0 when out of service).
PowerMatrix power_matrix(const grid::FlowSolution& solution, const grid::GridCase& c);

/// Entrywise contingency - base; throws std::invalid_argument on shape mismatch.
DeltaMatrix delta_power_matrix(const PowerMatrix& base, const PowerMatrix& contingency);

FeatureVector flatten(const DeltaMatrix& delta, const grid::GridCase& c);
DeltaMatrix unflatten(std::span<const double> values, const grid::GridCase& c);

/// Delta features for removing `removed` from the intact case, given the
/// precomputed base-state matrix.
FeatureVector contingency_features(const grid::GridCase& c, const PowerMatrix& base,
                                   std::span<const int> removed);

}  // namespace onset::features

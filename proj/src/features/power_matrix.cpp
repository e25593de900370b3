#include "onset/features/power_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace onset::features {

BusPairMatrix::BusPairMatrix(const grid::GridCase& c) {
  for (const auto& b : c.buses()) bus_ids_.push_back(b.id);
  std::sort(bus_ids_.begin(), bus_ids_.end());
  for (std::size_t i = 0; i < bus_ids_.size(); ++i) pos_[bus_ids_[i]] = static_cast<Eigen::Index>(i);
  for (const auto& br : c.branches()) support_.push_back(std::minmax(br.from_bus, br.to_bus));
  std::sort(support_.begin(), support_.end());
  auto n = static_cast<Eigen::Index>(bus_ids_.size());
  values_ = Eigen::MatrixXd::Zero(n, n);
}

double BusPairMatrix::at(int bus_i, int bus_j) const {
  auto i = pos_.find(bus_i), j = pos_.find(bus_j);
  if (i == pos_.end() || j == pos_.end()) throw std::out_of_range("bus id not in matrix");
  return values_(i->second, j->second);
}

double BusPairMatrix::canonical(int bus_i, int bus_j) const {
  auto [lo, hi] = std::minmax(bus_i, bus_j);
  return at(lo, hi);
}

void BusPairMatrix::set(int from_bus, int to_bus, double value) {
  std::pair<int, int> key{std::min(from_bus, to_bus), std::max(from_bus, to_bus)};
  if (!std::binary_search(support_.begin(), support_.end(), key)) {
    throw std::invalid_argument("no branch between buses " + std::to_string(from_bus) + " and " +
                                std::to_string(to_bus));
  }
  auto i = pos_.at(from_bus), j = pos_.at(to_bus);
  values_(i, j) = value;
  values_(j, i) = -value;
}

bool BusPairMatrix::same_shape(const BusPairMatrix& other) const {
  return bus_ids_ == other.bus_ids_ && support_ == other.support_;
}

PowerMatrix power_matrix(const grid::FlowSolution& solution, const grid::GridCase& c) {
  if (solution.branch_flow_mw.size() != c.branch_count() ||
      solution.angle_rad.size() != c.bus_count()) {
    throw std::invalid_argument("flow solution dimensions do not match the grid case");
  }
  PowerMatrix m(c);
  for (std::size_t k = 0; k < c.branch_count(); ++k) {
    const auto& br = c.branches()[k];
    m.set(br.from_bus, br.to_bus, solution.branch_in_service[k] ? solution.branch_flow_mw[k] : 0.0);
  }
  return m;
}

DeltaMatrix delta_power_matrix(const PowerMatrix& base, const PowerMatrix& contingency) {
  if (!base.same_shape(contingency)) {
    throw std::invalid_argument("power matrices differ in buses or topology");
  }
  auto d = DeltaMatrix::zeros_like(base);
  for (auto [i, j] : base.support()) d.set(i, j, contingency.at(i, j) - base.at(i, j));
  return d;
}

FeatureVector flatten(const DeltaMatrix& delta, const grid::GridCase& c) {
  FeatureVector v;
  v.reserve(c.branch_count());
  for (int id : c.sorted_branch_ids()) {
    const auto& br = c.branches()[c.branch_index(id)];
    v.push_back(delta.canonical(br.from_bus, br.to_bus));
  }
  return v;
}

DeltaMatrix unflatten(std::span<const double> values, const grid::GridCase& c) {
  if (values.size() != c.branch_count()) {
    throw std::invalid_argument("feature vector length does not match branch count");
  }
  DeltaMatrix d(c);
  auto ids = c.sorted_branch_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& br = c.branches()[c.branch_index(ids[i])];
    auto [lo, hi] = std::minmax(br.from_bus, br.to_bus);
    d.set(lo, hi, values[i]);
  }
  return d;
}

FeatureVector contingency_features(const grid::GridCase& c, const PowerMatrix& base,
                                   std::span<const int> removed) {
  auto post = power_matrix(grid::solve_dc_power_flow(c, removed), c);
  return flatten(delta_power_matrix(base, post), c);
}

}  // namespace onset::features

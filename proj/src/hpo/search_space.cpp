#include "onset/hpo/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace onset::hpo {
namespace {

template <class T>
double rank_of(const std::vector<T>& levels, const T& v, const char* dim) {
  auto it = std::find(levels.begin(), levels.end(), v);
  if (it == levels.end()) throw std::invalid_argument(std::string("value not in grid for ") + dim);
  if (levels.size() == 1) return 0.0;
  return static_cast<double>(it - levels.begin()) / static_cast<double>(levels.size() - 1);
}

template <class T>
T level_at(const std::vector<T>& levels, double u) {
  if (levels.size() == 1) return levels.front();
  double r = std::round(std::clamp(u, 0.0, 1.0) * static_cast<double>(levels.size() - 1));
  return levels[static_cast<std::size_t>(r)];
}

template <class T>
bool ascending_unique(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] < v[i])) return false;
  }
  return !v.empty();
}

}  // namespace

std::size_t SearchSpace::size() const {
  return n_trees.size() * max_depth.size() * min_samples_split.size() * min_samples_leaf.size() *
         feature_rule.size() * bootstrap.size();
}

bool SearchSpace::contains(const ml::RFConfig& c) const {
  auto has = [](const auto& levels, const auto& v) {
    return std::find(levels.begin(), levels.end(), v) != levels.end();
  };
  return has(n_trees, c.n_trees) && has(max_depth, c.max_depth) &&
         has(min_samples_split, c.min_samples_split) && has(min_samples_leaf, c.min_samples_leaf) &&
         has(feature_rule, c.feature_rule) && has(bootstrap, c.bootstrap);
}

std::vector<ml::RFConfig> SearchSpace::grid() const {
  std::vector<ml::RFConfig> out;
  out.reserve(size());
  for (int t : n_trees)
    for (int d : max_depth)
      for (int s : min_samples_split)
        for (int l : min_samples_leaf)
          for (auto r : feature_rule)
            for (bool b : bootstrap) out.push_back({t, d, s, l, r, b});
  return out;
}

void validate(const SearchSpace& s) {
  if (!ascending_unique(s.n_trees) || !ascending_unique(s.max_depth) ||
      !ascending_unique(s.min_samples_split) || !ascending_unique(s.min_samples_leaf)) {
    throw std::invalid_argument("search space levels must be nonempty, unique and ascending");
  }
  if (s.feature_rule.empty() || s.bootstrap.empty()) {
    throw std::invalid_argument("search space has an empty dimension");
  }
  if (s.n_trees.front() < 1 || s.max_depth.front() < 0 || s.min_samples_split.front() < 2 ||
      s.min_samples_leaf.front() < 1) {
    throw std::invalid_argument("search space contains invalid forest settings");
  }
}

ml::RFConfig default_rf_config() { return {400, 20, 2, 1, ml::FeatureRule::Sqrt, true}; }

Eigen::VectorXd encode(const ml::RFConfig& c, const SearchSpace& s) {
  Eigen::VectorXd x(kSearchDims);
  x(0) = rank_of(s.n_trees, c.n_trees, "n_trees");
  x(1) = rank_of(s.max_depth, c.max_depth, "max_depth");
  x(2) = rank_of(s.min_samples_split, c.min_samples_split, "min_samples_split");
  x(3) = rank_of(s.min_samples_leaf, c.min_samples_leaf, "min_samples_leaf");
  x(4) = rank_of(s.feature_rule, c.feature_rule, "feature_rule");
  x(5) = rank_of(s.bootstrap, c.bootstrap, "bootstrap");
  return x;
}

ml::RFConfig decode(const Eigen::VectorXd& x, const SearchSpace& s) {
  if (x.size() != kSearchDims) throw std::invalid_argument("encoded config must have 6 coordinates");
  return {level_at(s.n_trees, x(0)),          level_at(s.max_depth, x(1)),
          level_at(s.min_samples_split, x(2)), level_at(s.min_samples_leaf, x(3)),
          level_at(s.feature_rule, x(4)),      static_cast<bool>(level_at(s.bootstrap, x(5)))};
}

}  // namespace onset::hpo

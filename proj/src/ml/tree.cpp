#include "onset/ml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace onset::ml {

int features_per_node(FeatureRule rule, int d) {
  if (d <= 0) return 0;
  int m = d;
  switch (rule) {
    case FeatureRule::All: m = d; break;
    case FeatureRule::Sqrt: m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d)))); break;
    case FeatureRule::Log2: m = static_cast<int>(std::ceil(std::log2(static_cast<double>(d)))); break;
  }
  return std::clamp(m, 1, d);
}

void validate(const TreeConfig& cfg) {
  if (cfg.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0 (0 = unlimited)");
  if (cfg.min_samples_split < 2) throw std::invalid_argument("min_samples_split must be >= 2");
  if (cfg.min_samples_leaf < 1) throw std::invalid_argument("min_samples_leaf must be >= 1");
}

double gini_impurity(std::span<const std::size_t> counts) {
  std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (n == 0) throw std::invalid_argument("gini impurity of an empty node");
  double sum_sq = 0.0;
  for (auto c : counts) {
    double p = static_cast<double>(c) / static_cast<double>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

TreeModel::TreeModel(std::vector<TreeNode> nodes, int num_features, int num_classes)
    : nodes_(std::move(nodes)), num_features_(num_features), num_classes_(num_classes) {
  for (const auto& n : nodes_) depth_ = std::max(depth_, n.depth);
}

int TreeModel::leaf_for(std::span<const double> row) const {
  if (static_cast<int>(row.size()) != num_features_) {
    throw std::invalid_argument("feature dimension mismatch: got " + std::to_string(row.size()) +
                                ", model expects " + std::to_string(num_features_));
  }
  int at = 0;
  while (!nodes_[static_cast<std::size_t>(at)].is_leaf()) {
    const auto& n = nodes_[static_cast<std::size_t>(at)];
    at = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return at;
}

int TreeModel::predict(std::span<const double> row) const {
  return nodes_[static_cast<std::size_t>(leaf_for(row))].label;
}

namespace {

__extension__ using Wide = unsigned __int128;

// Score sum_c l_c^2/n_l + sum_c r_c^2/n_r held as the exact fraction
// num / den, so equal scores compare equal.
struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  std::uint64_t num = 0;
  std::uint64_t den = 0;
};

class Grower {
 public:
  Grower(const LabeledData& data, const TreeConfig& cfg, Rng& rng)
      : data_(data), cfg_(cfg), rng_(rng), k_(static_cast<std::size_t>(data.num_classes)),
        d_(static_cast<int>(data.cols())),
        quota_(features_per_node(cfg.feature_rule, static_cast<int>(data.cols()))) {}

  TreeModel grow(std::span<const std::size_t> rows) {
    idx_.assign(rows.begin(), rows.end());
    struct Pending {
      int node;
      std::size_t begin, end;
      int depth;
    };
    std::vector<Pending> stack;
    nodes_.clear();
    nodes_.push_back({});
    stack.push_back({0, 0, idx_.size(), 0});

    while (!stack.empty()) {
      auto [node, begin, end, depth] = stack.back();
      stack.pop_back();

      std::vector<std::size_t> counts(k_, 0);
      for (std::size_t i = begin; i < end; ++i) ++counts[static_cast<std::size_t>(data_.y[idx_[i]])];
      const std::size_t n = end - begin;
      {
        TreeNode& tn = nodes_[static_cast<std::size_t>(node)];
        tn.samples = static_cast<int>(n);
        tn.depth = depth;
        tn.label = argmax_lowest(std::span<const std::size_t>(counts));
      }

      bool pure = *std::max_element(counts.begin(), counts.end()) == n;
      bool too_small = n < static_cast<std::size_t>(cfg_.min_samples_split) ||
                       n < 2 * static_cast<std::size_t>(cfg_.min_samples_leaf);
      bool too_deep = cfg_.max_depth > 0 && depth >= cfg_.max_depth;
      if (n == 0 || pure || too_small || too_deep) continue;

      SplitChoice best = find_split(begin, end, counts);
      if (best.feature < 0) continue;

      auto mid = std::stable_partition(
          idx_.begin() + static_cast<std::ptrdiff_t>(begin),
          idx_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t r) {
            return data_.x(static_cast<Eigen::Index>(r), best.feature) <= best.threshold;
          });
      std::size_t split_at = static_cast<std::size_t>(mid - idx_.begin());

      int left = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      int right = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      TreeNode& tn = nodes_[static_cast<std::size_t>(node)];
      tn.feature = best.feature;
      tn.threshold = best.threshold;
      tn.left = left;
      tn.right = right;
      // Right pushed first so the left subtree is numbered first.
      stack.push_back({right, split_at, end, depth + 1});
      stack.push_back({left, begin, split_at, depth + 1});
    }
    return TreeModel(std::move(nodes_), d_, data_.num_classes);
  }

 private:
  SplitChoice find_split(std::size_t begin, std::size_t end, const std::vector<std::size_t>& counts) {
    SplitChoice best;
    std::vector<int> order(static_cast<std::size_t>(d_));
    std::iota(order.begin(), order.end(), 0);
    const bool shuffled = cfg_.feature_rule != FeatureRule::All;

    for (int t = 0; t < d_; ++t) {
      if (t >= quota_ && best.feature >= 0) break;
      if (shuffled) {
        std::uniform_int_distribution<int> pick(t, d_ - 1);
        std::swap(order[static_cast<std::size_t>(t)], order[static_cast<std::size_t>(pick(rng_))]);
      }
      scan_feature(order[static_cast<std::size_t>(t)], begin, end, counts, best);
    }
    return best;
  }

  void scan_feature(int f, std::size_t begin, std::size_t end,
                    const std::vector<std::size_t>& counts, SplitChoice& best) {
    const std::size_t n = end - begin;
    pairs_.clear();
    for (std::size_t i = begin; i < end; ++i) {
      pairs_.emplace_back(data_.x(static_cast<Eigen::Index>(idx_[i]), f), data_.y[idx_[i]]);
    }
    std::sort(pairs_.begin(), pairs_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!(pairs_.front().first < pairs_.back().first)) return;  // constant feature

    const std::size_t min_leaf = static_cast<std::size_t>(cfg_.min_samples_leaf);
    left_.assign(k_, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left_[static_cast<std::size_t>(pairs_[i].second)];
      const std::size_t nl = i + 1, nr = n - nl;
      if (!(pairs_[i].first < pairs_[i + 1].first)) continue;
      if (nl < min_leaf || nr < min_leaf) continue;

      std::uint64_t sl = 0, sr = 0;
      for (std::size_t c = 0; c < k_; ++c) {
        sl += left_[c] * left_[c];
        sr += (counts[c] - left_[c]) * (counts[c] - left_[c]);
      }
      const std::uint64_t num = sl * nr + sr * nl, den = nl * nr;
      if (best.den == 0 || Wide{num} * best.den > Wide{best.num} * den) {
        double a = pairs_[i].first, b = pairs_[i + 1].first;
        double thr = a + (b - a) / 2.0;
        if (!(thr < b)) thr = a;
        best = {f, thr, num, den};
      }
    }
  }

  const LabeledData& data_;
  const TreeConfig& cfg_;
  Rng& rng_;
  std::size_t k_;
  int d_;
  int quota_;
  std::vector<std::size_t> idx_;
  std::vector<TreeNode> nodes_;
  std::vector<std::pair<double, int>> pairs_;
  std::vector<std::size_t> left_;
};

}  // namespace

TreeModel grow_tree(const LabeledData& data, std::span<const std::size_t> rows,
                    const TreeConfig& cfg, Rng& rng) {
  validate(data);
  validate(cfg);
  if (rows.empty()) throw TrainingError("cannot train a tree on an empty dataset");
  return Grower(data, cfg, rng).grow(rows);
}

TreeModel train_decision_tree(const LabeledData& data, const TreeConfig& cfg, std::uint64_t seed) {
  if (data.rows() == 0) throw TrainingError("cannot train a tree on an empty dataset");
  std::vector<std::size_t> rows(data.rows());
  std::iota(rows.begin(), rows.end(), 0);
  Rng rng = make_rng(derive_seed(seed, std::uint64_t{0}));
  return grow_tree(data, rows, cfg, rng);
}

}  // namespace onset::ml

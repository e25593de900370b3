#include "onset/ml/forest.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "onset/util/parallel.hpp"

namespace onset::ml {

TreeConfig RFConfig::tree_config() const {
  return {max_depth, min_samples_split, min_samples_leaf, feature_rule};
}

void validate(const RFConfig& cfg) {
  if (cfg.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
  validate(cfg.tree_config());
}

std::string_view to_string(FeatureRule rule) {
  switch (rule) {
    case FeatureRule::All: return "all";
    case FeatureRule::Sqrt: return "sqrt";
    case FeatureRule::Log2: return "log2";
  }
  return "?";
}

FeatureRule feature_rule_from_string(std::string_view s) {
  if (s == "all") return FeatureRule::All;
  if (s == "sqrt") return FeatureRule::Sqrt;
  if (s == "log2") return FeatureRule::Log2;
  throw std::invalid_argument("unknown feature rule '" + std::string(s) + "'");
}

std::string to_string(const RFConfig& cfg) {
  std::ostringstream out;
  out << "n_trees=" << cfg.n_trees << " max_depth=" << cfg.max_depth
      << " min_samples_split=" << cfg.min_samples_split
      << " min_samples_leaf=" << cfg.min_samples_leaf << " features=" << to_string(cfg.feature_rule)
      << " bootstrap=" << (cfg.bootstrap ? "true" : "false");
  return out.str();
}

ForestModel::ForestModel(std::vector<TreeModel> trees, int num_classes)
    : trees_(std::move(trees)), num_classes_(num_classes) {}

std::vector<int> ForestModel::votes(std::span<const double> row) const {
  std::vector<int> v(static_cast<std::size_t>(num_classes_), 0);
  for (const auto& t : trees_) ++v[static_cast<std::size_t>(t.predict(row))];
  return v;
}

int ForestModel::predict(std::span<const double> row) const {
  auto v = votes(row);
  return argmax_lowest(std::span<const int>(v));
}

ForestModel train_random_forest(const LabeledData& data, const RFConfig& cfg, std::uint64_t seed,
                                unsigned workers) {
  validate(cfg);
  validate(data);
  if (data.rows() == 0) throw TrainingError("cannot train a forest on an empty dataset");

  const std::size_t n = data.rows();
  const TreeConfig tcfg = cfg.tree_config();
  std::vector<TreeModel> trees(static_cast<std::size_t>(cfg.n_trees));
  parallel_for(trees.size(), workers, [&](std::size_t j) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    std::vector<std::size_t> rows(n);
    if (cfg.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (auto& r : rows) r = pick(rng);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    trees[j] = grow_tree(data, rows, tcfg, rng);
  });
  return ForestModel(std::move(trees), data.num_classes);
}

}  // namespace onset::ml

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "onset/hpo/gp.hpp"
#include "onset/hpo/search_space.hpp"

namespace onset::hpo {

/// Objective value (to minimize) plus optional per-fold accuracies.
struct Evaluation {
  double objective = 1.0;
  std::vector<double> fold_scores;
};

using Objective = std::function<Evaluation(const ml::RFConfig&)>;

struct EvaluatedPoint {
  ml::RFConfig config;
  Eigen::VectorXd encoded;
  double objective = 1.0;
  std::vector<double> fold_scores;
  bool failed = false;
};

struct BOResult {
  std::vector<EvaluatedPoint> trace;
  std::size_t best_index = 0;
  int budget = 0;
  std::uint64_t seed = 0;

  const EvaluatedPoint& best() const { return trace.at(best_index); }
};

struct BOOptions {
  int n_init = 11;
  int budget = 50;
  std::uint64_t seed = 0;
  KernelConfig kernel{};
  ml::RFConfig initial = default_rf_config();
};

/// Objective value recorded when an evaluation throws or returns non-finite.
inline constexpr double kFailedObjective = 1.0;

/// Sequential GP/EI search over the finite grid.
///
/// The initial design is `opts.initial` followed by n_init - 1 distinct
/// random grid points. Each later iteration fits the GP to every evaluated
/// point, scores all unevaluated grid points by expected improvement and
/// evaluates the maximizer (ties go to the lexicographically smallest
/// encoding). The budget is capped at the grid size; no point is evaluated
/// twice. The best point is the first one attaining the minimum objective.
BOResult bayesian_optimize(const Objective& objective, const SearchSpace& space,
                           const BOOptions& opts);

/// CSV: iter,n_trees,max_depth,min_split,min_leaf,feat_rule,bootstrap,
/// fold1..foldK,mean_acc,objective,is_best_so_far
std::string format_trace_csv(const BOResult& result, int folds);

}  // namespace onset::hpo

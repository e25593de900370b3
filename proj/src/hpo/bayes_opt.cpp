#include "onset/hpo/bayes_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "onset/hpo/acquisition.hpp"
#include "onset/util/rng.hpp"
#include "onset/util/text.hpp"

namespace onset::hpo {
namespace {

EvaluatedPoint evaluate(const Objective& objective, const ml::RFConfig& cfg, const SearchSpace& space) {
  EvaluatedPoint p;
  p.config = cfg;
  p.encoded = encode(cfg, space);
  try {
    Evaluation e = objective(cfg);
    if (!std::isfinite(e.objective)) throw std::runtime_error("non-finite objective");
    p.objective = e.objective;
    p.fold_scores = std::move(e.fold_scores);
  } catch (const std::exception&) {
    p.objective = kFailedObjective;
    p.fold_scores.clear();
    p.failed = true;
  }
  return p;
}

}  // namespace

BOResult bayesian_optimize(const Objective& objective, const SearchSpace& space,
                           const BOOptions& opts) {
  validate(space);
  if (opts.n_init < 2) throw std::invalid_argument("n_init must be >= 2");
  if (opts.budget < opts.n_init) throw std::invalid_argument("budget must be >= n_init");
  if (!space.contains(opts.initial)) throw std::invalid_argument("initial config is not in the grid");

  const auto grid = space.grid();
  const std::size_t budget = std::min<std::size_t>(static_cast<std::size_t>(opts.budget), grid.size());
  const std::size_t n_init = std::min<std::size_t>(static_cast<std::size_t>(opts.n_init), budget);

  std::vector<Eigen::VectorXd> enc;
  enc.reserve(grid.size());
  for (const auto& c : grid) enc.push_back(encode(c, space));

  BOResult res;
  res.budget = opts.budget;
  res.seed = opts.seed;
  std::vector<bool> done(grid.size(), false);

  auto run = [&](std::size_t gi) {
    done[gi] = true;
    res.trace.push_back(evaluate(objective, grid[gi], space));
  };

  // Initial design: the seeded config, then distinct random picks.
  auto first = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), opts.initial) - grid.begin());
  run(first);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i != first) pool.push_back(i);
  }
  Rng rng = make_rng(opts.seed);
  for (std::size_t j = 0; res.trace.size() < n_init; ++j) {
    std::uniform_int_distribution<std::size_t> pick(j, pool.size() - 1);
    std::swap(pool[j], pool[pick(rng)]);
    run(pool[j]);
  }

  while (res.trace.size() < budget) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(res.trace.size()), kSearchDims);
    Eigen::VectorXd y(static_cast<Eigen::Index>(res.trace.size()));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      x.row(static_cast<Eigen::Index>(i)) = res.trace[i].encoded.transpose();
      y(static_cast<Eigen::Index>(i)) = res.trace[i].objective;
      best = std::min(best, res.trace[i].objective);
    }
    GPModel gp = GPModel::fit(x, y, opts.kernel);

    std::size_t chosen = grid.size();
    double best_ei = -1.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      if (done[gi]) continue;
      auto post = gp.posterior(enc[gi]);
      double ei = expected_improvement(post.mean, post.stddev, best);
      if (ei > best_ei) {
        best_ei = ei;
        chosen = gi;
      }
    }
    run(chosen);
  }

  res.best_index = 0;
  for (std::size_t i = 1; i < res.trace.size(); ++i) {
    if (res.trace[i].objective < res.trace[res.best_index].objective) res.best_index = i;
  }
  return res;
}

std::string format_trace_csv(const BOResult& result, int folds) {
  std::ostringstream out;
  out << "iter,n_trees,max_depth,min_split,min_leaf,feat_rule,bootstrap";
  for (int f = 1; f <= folds; ++f) out << ",fold" << f;
  out << ",mean_acc,objective,is_best_so_far\n";

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& p = result.trace[i];
    const auto& c = p.config;
    out << (i + 1) << ',' << c.n_trees << ',' << c.max_depth << ',' << c.min_samples_split << ','
        << c.min_samples_leaf << ',' << ml::to_string(c.feature_rule) << ','
        << (c.bootstrap ? "true" : "false");
    for (int f = 0; f < folds; ++f) {
      out << ',';
      if (static_cast<std::size_t>(f) < p.fold_scores.size()) out << text::format_exact(p.fold_scores[static_cast<std::size_t>(f)]);
    }
    out << ',';
    if (!p.fold_scores.empty()) {
      double mean = std::accumulate(p.fold_scores.begin(), p.fold_scores.end(), 0.0) /
                    static_cast<double>(p.fold_scores.size());
      out << text::format_exact(mean);
    }
    bool improved = p.objective < best;
    if (improved) best = p.objective;
    out << ',' << text::format_exact(p.objective) << ',' << (improved ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace onset::hpo

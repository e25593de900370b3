#include "onset/hpo/tune.hpp"

#include <chrono>
#include <stdexcept>

#include "onset/util/rng.hpp"

namespace onset::hpo {

TuneResult tune_random_forest(const ml::LabeledData& train, const ml::LabeledData* test,
                              const SearchSpace& space, const TuneOptions& opts) {
  if (train.rows() == 0) throw std::invalid_argument("tuning needs a nonempty training set");
  const std::uint64_t cv_seed = derive_seed(opts.seed, "cv");
  const std::uint64_t rf_seed = derive_seed(opts.seed, "rf");

  Objective objective = [&](const ml::RFConfig& cfg) {
    auto cv = cross_val_score(cfg, train, opts.folds, cv_seed, rf_seed, opts.workers);
    return Evaluation{1.0 - cv.mean_accuracy, cv.fold_scores};
  };

  BOOptions bo;
  bo.n_init = opts.n_init;
  bo.budget = opts.budget;
  bo.seed = derive_seed(opts.seed, "bo");
  bo.kernel = opts.kernel;
  bo.initial = opts.default_config;

  TuneResult out;
  out.search = bayesian_optimize(objective, space, bo);
  out.default_point = out.search.trace.front();
  bool any_ok = false;
  for (const auto& p : out.search.trace) any_ok = any_ok || !p.failed;
  if (!any_ok) throw std::runtime_error("every tuning evaluation failed");
  out.best_config = out.search.best().config;

  auto start = std::chrono::steady_clock::now();
  out.final_model = ml::train_random_forest(train, out.best_config, rf_seed, opts.workers);
  out.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (test != nullptr && test->rows() > 0) {
    std::size_t correct = 0;
    out.test_predictions.resize(test->rows());
    for (std::size_t i = 0; i < test->rows(); ++i) {
      auto row = test->x.row(static_cast<Eigen::Index>(i));
      int p = out.final_model.predict({row.data(), test->cols()});
      out.test_predictions[i] = p;
      correct += p == test->y[i];
    }
    out.test_accuracy = static_cast<double>(correct) / static_cast<double>(test->rows());
  }
  return out;
}

}  // namespace onset::hpo

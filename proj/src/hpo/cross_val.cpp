#include "onset/hpo/cross_val.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "onset/util/parallel.hpp"
#include "onset/util/rng.hpp"

namespace onset::hpo {

std::vector<int> assign_folds(const std::vector<int>& labels, int num_classes, int folds,
                              std::uint64_t seed, bool* stratified) {
  if (folds < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
  if (labels.size() < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument("fewer samples than folds");
  }
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(labels[i])].push_back(i);

  bool strat = std::all_of(by_class.begin(), by_class.end(), [&](const auto& m) {
    return m.empty() || m.size() >= static_cast<std::size_t>(folds);
  });
  Rng rng = make_rng(seed);
  std::vector<std::size_t> order;
  order.reserve(labels.size());
  if (strat) {
    for (auto& members : by_class) {
      std::shuffle(members.begin(), members.end(), rng);
      order.insert(order.end(), members.begin(), members.end());
    }
  } else {
    order.resize(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
  }
  if (stratified) *stratified = strat;

  std::vector<int> fold(labels.size());
  for (std::size_t p = 0; p < order.size(); ++p) fold[order[p]] = static_cast<int>(p % static_cast<std::size_t>(folds));
  return fold;
}

CvResult cross_val_score(const FitPredict& fit_predict, const ml::LabeledData& data, int folds,
                         std::uint64_t seed, unsigned workers) {
  ml::validate(data);
  if (data.rows() == 0) throw std::invalid_argument("cross-validation on an empty dataset");
  bool stratified = true;
  auto fold = assign_folds(data.y, data.num_classes, folds, seed, &stratified);
  if (!stratified) {
    std::clog << "warning: a class has fewer than " << folds
              << " samples; using unstratified folds\n";
  }

  CvResult res;
  res.fold_scores.assign(static_cast<std::size_t>(folds), 0.0);
  parallel_for(static_cast<std::size_t>(folds), workers, [&](std::size_t f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < fold.size(); ++i) {
      (fold[i] == static_cast<int>(f) ? test_rows : train_rows).push_back(i);
    }
    auto train = data.subset(train_rows);
    auto test = data.subset(test_rows);
    auto pred = fit_predict(train, test.x);
    if (pred.size() != test.y.size()) throw std::runtime_error("prediction count mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == test.y[i];
    res.fold_scores[f] = static_cast<double>(correct) / static_cast<double>(pred.size());
  });
  res.mean_accuracy = std::accumulate(res.fold_scores.begin(), res.fold_scores.end(), 0.0) /
                      static_cast<double>(folds);
  return res;
}

CvResult cross_val_score(const ml::RFConfig& cfg, const ml::LabeledData& data, int folds,
                         std::uint64_t fold_seed, std::uint64_t model_seed, unsigned workers) {
  FitPredict fp = [&](const ml::LabeledData& train, const ml::Matrix& test_x) {
    auto forest = ml::train_random_forest(train, cfg, model_seed, 1);
    std::vector<int> out(static_cast<std::size_t>(test_x.rows()));
    for (Eigen::Index i = 0; i < test_x.rows(); ++i) {
      out[static_cast<std::size_t>(i)] =
          forest.predict({test_x.row(i).data(), static_cast<std::size_t>(test_x.cols())});
    }
    return out;
  };
  return cross_val_score(fp, data, folds, fold_seed, workers);
}

}  // namespace onset::hpo

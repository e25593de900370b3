#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "onset/hpo/acquisition.hpp"
#include "onset/hpo/bayes_opt.hpp"
#include "onset/hpo/cross_val.hpp"
#include "onset/hpo/gp.hpp"
#include "onset/hpo/search_space.hpp"
#include "onset/hpo/tune.hpp"
#include "oracles.hpp"

using namespace onset;
using namespace onset::hpo;
using ml::FeatureRule;
using ml::RFConfig;

namespace {

ml::LabeledData blobs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  ml::LabeledData d{ml::Matrix(n, 4), std::vector<int>(static_cast<std::size_t>(n)), 3};
  for (int i = 0; i < n; ++i) {
    int c = i % 3;
    d.y[static_cast<std::size_t>(i)] = c;
    for (int j = 0; j < 4; ++j) d.x(i, j) = n01(rng) + (j == c ? 2.0 : 0.0);
  }
  return d;
}

SearchSpace small_space() {
  SearchSpace s;
  s.n_trees = {3, 6};
  s.max_depth = {2, 4};
  s.min_samples_split = {2};
  s.min_samples_leaf = {1, 3};
  s.feature_rule = {FeatureRule::Log2, FeatureRule::Sqrt};
  s.bootstrap = {true};
  return s;
}

oracle::Mat to_mat(const Eigen::MatrixXd& x) {
  oracle::Mat m(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) m[static_cast<std::size_t>(i)].push_back(x(i, j));
  }
  return m;
}

void check_against_textbook(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int queries,
                            std::uint64_t seed) {
  KernelConfig cfg;
  auto gp = GPModel::fit(x, y, cfg);
  REQUIRE(gp.jitter() == 0.0);
  auto xm = to_mat(x);
  std::vector<double> yv(y.data(), y.data() + y.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int q = 0; q < queries; ++q) {
    Eigen::VectorXd p(x.cols());
    for (Eigen::Index d = 0; d < p.size(); ++d) p(d) = u(rng);
    auto got = gp.posterior(p);
    auto ref = oracle::gp_textbook(xm, yv, std::vector<double>(p.data(), p.data() + p.size()),
                                   cfg.lengthscale, cfg.noise_variance);
    CHECK(std::abs(got.mean - ref.mean) < 1e-9);
    CHECK(std::abs(got.stddev - ref.stddev) < 1e-9);
  }
}

}  // namespace

TEST_CASE("search space") {
  SearchSpace s;
  CHECK(s.size() == 1600);
  auto grid = s.grid();
  CHECK(grid.size() == 1600);
  CHECK(std::set<RFConfig>(grid.begin(), grid.end()).size() == 1600);
  CHECK(s.contains(default_rf_config()));

  RFConfig lo{200, 10, 2, 1, FeatureRule::Log2, false};
  RFConfig hi{1000, 40, 15, 8, FeatureRule::Sqrt, true};
  CHECK(encode(lo, s).isZero());
  CHECK(encode(hi, s).isOnes());
  RFConfig mid = lo;
  mid.n_trees = 600;
  CHECK(encode(mid, s)(0) == 0.5);
  for (const auto& c : grid) CHECK(decode(encode(c, s), s) == c);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    auto a = encode(grid[i - 1], s), b = encode(grid[i], s);
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
  RFConfig bad = lo;
  bad.n_trees = 300;
  CHECK_THROWS_AS(encode(bad, s), std::invalid_argument);
}

TEST_CASE("stratified folds") {
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) labels[static_cast<std::size_t>(i)] = i < 50 ? 0 : (i < 80 ? 1 : 2);
  bool strat = false;
  auto f = assign_folds(labels, 3, 3, 7, &strat);
  CHECK(strat);
  std::array<int, 3> size{};
  std::array<std::array<int, 3>, 3> per{};
  for (std::size_t i = 0; i < 100; ++i) {
    ++size[static_cast<std::size_t>(f[i])];
    ++per[static_cast<std::size_t>(f[i])][static_cast<std::size_t>(labels[i])];
  }
  std::vector<int> sizes(size.begin(), size.end());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{33, 33, 34});
  for (int c = 0; c < 3; ++c) {
    int lo = 1000, hi = 0;
    for (int k = 0; k < 3; ++k) lo = std::min(lo, per[k][c]), hi = std::max(hi, per[k][c]);
    CHECK(hi - lo <= 1);
  }
  CHECK(assign_folds(labels, 3, 3, 7) == f);

  std::vector<int> rare{0, 0, 0, 0, 1};
  assign_folds(rare, 3, 3, 1, &strat);
  CHECK_FALSE(strat);
  CHECK_THROWS_AS(assign_folds(rare, 3, 1, 1), std::invalid_argument);
}

TEST_CASE("cross validation of a majority stub") {
  auto d = blobs(99, 3);
  FitPredict majority = [](const ml::LabeledData& train, const ml::Matrix& x) {
    auto counts = train.class_counts();
    int m = ml::argmax_lowest(std::span<const std::size_t>(counts));
    return std::vector<int>(static_cast<std::size_t>(x.rows()), m);
  };
  auto r = cross_val_score(majority, d, 3, 5);
  REQUIRE(r.fold_scores.size() == 3);
  for (double s : r.fold_scores) CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  RFConfig cfg{10, 5, 2, 1, FeatureRule::Sqrt, true};
  auto a = cross_val_score(cfg, d, 3, 1, 2, 1);
  auto b = cross_val_score(cfg, d, 3, 1, 2, 3);
  CHECK(a.fold_scores == b.fold_scores);
  CHECK(a.mean_accuracy > 0.6);
}

TEST_CASE("gp rejects duplicates and interpolates") {
  Eigen::MatrixXd x(3, 1);
  x << 0.1, 0.1, 0.5;
  CHECK_THROWS_AS(GPModel::fit(x, Eigen::Vector3d(1, 2, 3)), GPError);
  Eigen::MatrixXd one(1, 1);
  one << 0.3;
  CHECK_THROWS_AS(GPModel::fit(one, Eigen::VectorXd::Ones(1)), GPError);

  Eigen::MatrixXd xs(5, 1);
  xs << 0.0, 0.25, 0.5, 0.75, 1.0;
  Eigen::VectorXd ys(5);
  ys << 0.3, -0.1, 0.4, 0.8, 0.2;
  auto exact = GPModel::fit(xs, ys, KernelConfig{0.5, 0.0});
  for (int i = 0; i < 5; ++i) {
    auto p = exact.posterior(xs.row(i).transpose());
    CHECK(std::abs(p.mean - ys(i)) < 1e-8);
    CHECK(p.stddev < 1e-4);
  }
  auto gp = GPModel::fit(xs, ys);
  Eigen::VectorXd far(1);
  far << 25.0;
  auto p = gp.posterior(far);
  CHECK(p.mean == doctest::Approx(ys.mean()).epsilon(1e-9));
  CHECK(p.stddev == doctest::Approx(std::sqrt(gp.signal_variance())).epsilon(1e-9));
  Eigen::VectorXd a(1), b(1);
  a << 0.2;
  b << 0.9;
  CHECK(gp.kernel(a, b) == gp.kernel(b, a));
  check_against_textbook(xs, ys, 50, 1);
}

TEST_CASE("gp posterior matches the explicit inverse in six dimensions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::MatrixXd x(12, 6);
    Eigen::VectorXd y(12);
    for (int i = 0; i < 12; ++i) {
      for (int d = 0; d < 6; ++d) x(i, d) = u(rng);
      y(i) = u(rng);
    }
    check_against_textbook(x, y, 40, 100 + static_cast<std::uint64_t>(rep));
  }
}

TEST_CASE("expected improvement") {
  CHECK(expected_improvement(0.3, 0.0, 0.5) == 0.0);
  CHECK(expected_improvement(0.5, 1.0, 0.5) == doctest::Approx(1.0 / std::sqrt(2 * M_PI)).epsilon(1e-12));
  CHECK(expected_improvement(0.2, 0.1, 0.5) > expected_improvement(0.3, 0.1, 0.5));
  CHECK(expected_improvement(0.5, 0.2, 0.5) > expected_improvement(0.5, 0.1, 0.5));

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  const double mean = 0.4, sd = 0.3, best = 0.35;
  double acc = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) acc += std::max(best - (mean + sd * n01(rng)), 0.0);
  CHECK(std::abs(acc / draws - expected_improvement(mean, sd, best)) < 3e-3);

  std::uniform_real_distribution<double> u(-50, 50), us(0, 10);
  for (int i = 0; i < 10000; ++i) CHECK(expected_improvement(u(rng), us(rng), u(rng)) >= 0.0);
}

TEST_CASE("bayesian optimization on a small space evaluates everything once") {
  auto space = small_space();
  REQUIRE(space.size() == 16);
  int calls = 0;
  Objective obj = [&](const RFConfig& c) {
    ++calls;
    if (c.n_trees == 6 && c.max_depth == 4 && c.min_samples_leaf == 3 && c.feature_rule == FeatureRule::Log2) {
      throw std::runtime_error("boom");
    }
    double v = 0.1 * c.n_trees + 0.01 * c.max_depth + 0.001 * c.min_samples_leaf +
               (c.feature_rule == FeatureRule::Sqrt ? 0.0001 : 0.0);
    return Evaluation{v / 2.0, {}};
  };
  BOOptions opts;
  opts.n_init = 4;
  opts.budget = 30;
  opts.seed = 3;
  opts.initial = RFConfig{6, 2, 2, 1, FeatureRule::Sqrt, true};
  auto r = bayesian_optimize(obj, space, opts);
  CHECK(r.trace.size() == 16);
  CHECK(calls == 16);
  CHECK(r.trace[0].config == opts.initial);
  std::set<RFConfig> seen;
  double lowest = 10;
  for (const auto& p : r.trace) {
    seen.insert(p.config);
    lowest = std::min(lowest, p.objective);
    if (p.failed) CHECK(p.objective == kFailedObjective);
  }
  CHECK(seen.size() == 16);
  CHECK(std::count_if(r.trace.begin(), r.trace.end(), [](const auto& p) { return p.failed; }) == 1);
  CHECK(r.best().objective == lowest);
  CHECK(r.best().config == RFConfig{3, 2, 2, 1, FeatureRule::Log2, true});

  auto csv = format_trace_csv(r, 0);
  CHECK(csv.rfind("iter,n_trees,max_depth,min_split,min_leaf,feat_rule,bootstrap,mean_acc,objective,is_best_so_far\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("tuning is deterministic and never worse than the default") {
  auto d = blobs(90, 21);
  TuneOptions opts;
  opts.budget = 6;
  opts.n_init = 3;
  opts.seed = 4;
  opts.default_config = RFConfig{6, 4, 2, 1, FeatureRule::Sqrt, true};
  auto a = tune_random_forest(d, &d, small_space(), opts);
  opts.workers = 2;
  auto b = tune_random_forest(d, &d, small_space(), opts);
  REQUIRE(a.search.trace.size() == 6);
  REQUIRE(b.search.trace.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.search.trace[i].config == b.search.trace[i].config);
    CHECK(a.search.trace[i].objective == b.search.trace[i].objective);
    CHECK(a.search.trace[i].fold_scores.size() == 3);
  }
  CHECK(a.best_config == b.best_config);
  CHECK(a.test_predictions == b.test_predictions);
  CHECK(a.default_point.config == opts.default_config);
  CHECK(a.search.best().objective <= a.default_point.objective);
  REQUIRE(a.test_accuracy.has_value());
  CHECK(*a.test_accuracy > 0.7);
}

// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "artifacts.hpp"
#include "fixtures.hpp"
#include "gradcheck.hpp"
#include "onset/app/commands.hpp"
#include "onset/app/config.hpp"
#include "onset/features/dataset.hpp"
#include "onset/grid/power_flow.hpp"
#include "onset/hpo/acquisition.hpp"
#include "onset/hpo/bayes_opt.hpp"
#include "onset/hpo/gp.hpp"
#include "onset/hpo/tune.hpp"
#include "onset/ml/model.hpp"
#include "onset/report/metrics.hpp"
#include "onset/sim/onset.hpp"
#include "onset/util/rng.hpp"
#include "oracles.hpp"

using namespace onset;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(4) << v;
  return ss.str();
}

unsigned cores() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome power_flow_oracle() {
  double worst_flow = 0, worst_balance = 0, solve_seconds = 0;
  int cases = 0;
  for (const char* name : {"two_bus.csv", "triangle.csv", "five_bus.csv", "grid24.csv"}) {
    auto c = grid::load_grid_case(fixtures::path(name));
    auto ids = c.sorted_branch_ids();
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> removed;
      if (trial > 0) {
        std::shuffle(ids.begin(), ids.end(), rng);
        removed.assign(ids.begin(), ids.begin() + static_cast<long>(rng() % std::min<std::size_t>(ids.size(), 4)));
      }
      auto t0 = Clock::now();
      auto s = grid::solve_dc_power_flow(c, removed);
      solve_seconds += seconds_since(t0);
      ++cases;

      auto ref = oracle::dense_dc_flow(c, std::set<int>(removed.begin(), removed.end()));
      for (const auto& [id, f] : ref.flow_mw) {
        worst_flow = std::max(worst_flow, std::abs(s.branch_flow_mw[c.branch_index(id)] - f) / c.base_mva());
      }
      std::vector<double> out(c.bus_count(), 0.0);
      for (std::size_t k = 0; k < c.branch_count(); ++k) {
        const auto& br = c.branches()[k];
        out[c.bus_index(br.from_bus)] += s.branch_flow_mw[k];
        out[c.bus_index(br.to_bus)] -= s.branch_flow_mw[k];
      }
      for (std::size_t b = 0; b < c.bus_count(); ++b) {
        worst_balance = std::max(worst_balance, std::abs(out[b] - s.injection_mw[b]));
      }
    }
  }
  return {worst_flow < 1e-9 && worst_balance < 1e-6 && solve_seconds < 1.0,
          std::to_string(cases) + " solves, max flow err " + fmt(worst_flow) + " p.u., max imbalance " +
              fmt(worst_balance) + " MW, " + fmt(solve_seconds) + " s"};
}

Outcome labeling_partition() {
  const sim::LabelingConfig cfg{100.0, 1000.0};
  std::vector<std::optional<double>> values{std::nullopt, 0.0, 100.0, 1000.0,
                                            std::nextafter(1000.0, 0.0), std::nextafter(1000.0, 2000.0),
                                            std::nextafter(100.0, 0.0), 1000.0 - 1e-9, 1000.0 + 1e-9};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 3000.0);
  while (values.size() < 10000) {
    if (rng() % 20 == 0) {
      values.push_back(std::nullopt);
    } else {
      values.push_back(u(rng));
    }
  }
  std::size_t bad = 0;
  for (const auto& v : values) {
    int expect = !v || *v >= 1000.0 ? 1 : (*v < 100.0 ? 2 : 3);
    int code = sim::class_code(sim::label(v, cfg));
    int matches = (code == 1) + (code == 2) + (code == 3);
    if (matches != 1 || code != expect) ++bad;
  }
  return {bad == 0, std::to_string(values.size()) + " onsets, " + std::to_string(bad) + " mislabeled"};
}

Outcome forest_degeneracy() {
  const auto& full = fixtures::n2_dataset();
  auto all = full.to_labeled();
  std::vector<std::size_t> first(200);
  std::iota(first.begin(), first.end(), 0);
  auto d = all.subset(first);

  ml::RFConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  cfg.feature_rule = ml::FeatureRule::All;
  auto forest = ml::train_random_forest(d, cfg, 42);
  auto tree = ml::train_decision_tree(d, cfg.tree_config(), 42);
  std::size_t diff = 0;
  for (long i = 0; i < all.x.rows(); ++i) {
    std::span<const double> row(all.x.row(i).data(), all.cols());
    diff += forest.predict(row) != tree.predict(row);
  }
  return {diff == 0, "200 training samples, " + std::to_string(all.rows()) + " queries, " +
                         std::to_string(diff) + " disagreements"};
}

Outcome training_accuracy() {
  auto d = fixtures::n2_dataset().to_labeled();
  if (!fixtures::consistent(d)) return {false, "fixture has conflicting duplicate rows"};
  std::string detail;
  bool ok = true;
  for (auto kind : {ml::LearnerKind::DecisionTree, ml::LearnerKind::RandomForest}) {
    auto m = ml::train_model(kind, d, {}, 42, cores());
    auto p = m.predict_all(d.x);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < p.size(); ++i) hit += p[i] == d.y[i];
    double acc = static_cast<double>(hit) / static_cast<double>(p.size());
    ok = ok && acc == 1.0;
    detail += std::string(detail.empty() ? "" : ", ") + std::string(ml::slug(kind)) + " " + fmt(acc);
  }
  return {ok, detail + " on " + std::to_string(d.rows()) + " samples"};
}

Outcome gradient_checks() {
  double lr = 0, mlp = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    lr = std::max(lr, gradcheck::logreg_error(16, 6, seed));
    mlp = std::max(mlp, gradcheck::mlp_error(16, 6, 10, seed));
  }
  return {lr < 1e-6 && mlp < 1e-4, "logreg rel err " + fmt(lr) + ", mlp rel err " + fmt(mlp)};
}

Outcome gp_and_ei() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u01(0, 1);
  double gp_err = 0;
  for (int inst = 0; inst < 10; ++inst) {
    const int n = 15;
    Eigen::MatrixXd x(n, 6);
    Eigen::VectorXd y(n);
    oracle::Mat xm(n, std::vector<double>(6));
    for (int i = 0; i < n; ++i) {
      for (int d = 0; d < 6; ++d) xm[i][d] = x(i, d) = u01(rng);
      y(i) = u01(rng);
    }
    std::vector<double> yv(y.data(), y.data() + n);
    hpo::KernelConfig kc;
    auto gp = hpo::GPModel::fit(x, y, kc);
    for (int q = 0; q < 50; ++q) {
      Eigen::VectorXd p(6);
      for (int d = 0; d < 6; ++d) p(d) = u01(rng);
      auto got = gp.posterior(p);
      auto ref = oracle::gp_textbook(xm, yv, std::vector<double>(p.data(), p.data() + 6), kc.lengthscale,
                                     kc.noise_variance);
      gp_err = std::max({gp_err, std::abs(got.mean - ref.mean), std::abs(got.stddev - ref.stddev)});
    }
  }

  double mc_err = 0;
  std::normal_distribution<double> n01;
  const std::array<std::array<double, 3>, 3> settings{{{0.40, 0.15, 0.35}, {0.20, 0.05, 0.25}, {0.30, 0.10, 0.30}}};
  for (const auto& [mean, sd, best] : settings) {
    double acc = 0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) acc += std::max(best - (mean + sd * n01(rng)), 0.0);
    mc_err = std::max(mc_err, std::abs(acc / draws - hpo::expected_improvement(mean, sd, best)));
  }

  std::uniform_real_distribution<double> wide(-10, 10), sdd(0, 5);
  std::size_t negative = 0;
  for (int i = 0; i < 100000; ++i) negative += hpo::expected_improvement(wide(rng), sdd(rng), wide(rng)) < 0.0;

  return {gp_err < 1e-9 && mc_err < 1e-3 && negative == 0,
          "GP max err " + fmt(gp_err) + ", EI vs Monte Carlo " + fmt(mc_err) + ", " +
              std::to_string(negative) + " negative EI of 100000"};
}

Outcome bo_improvement() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto [train, test] = features::split(fixtures::n2_dataset(), 0.7, derive_seed(seed, "split"));
    hpo::TuneOptions opts;
    opts.seed = seed;
    opts.workers = cores();
    auto r = hpo::tune_random_forest(train.to_labeled(), nullptr, hpo::SearchSpace{}, opts);
    double best = 1.0 - r.search.best().objective;
    double def = 1.0 - r.default_point.objective;
    bool folds_ok = std::all_of(r.search.trace.begin(), r.search.trace.end(),
                                [](const auto& p) { return p.fold_scores.size() == 3; });
    bool seed_ok = best >= def && r.search.trace.size() == 50 && folds_ok &&
                   r.search.trace.front().config == hpo::default_rf_config();
    ok = ok && seed_ok;
    detail += std::string(detail.empty() ? "" : "; ") + "seed " + std::to_string(seed) + " " + fmt(def) +
              " -> " + fmt(best);
  }
  return {ok, detail + " (trace 50, 3 folds)"};
}

Outcome bo_oracle() {
  hpo::SearchSpace space;
  auto grid = space.grid();
  int hits = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> u01(0, 1);
    Eigen::VectorXd target(hpo::kSearchDims);
    for (int d = 0; d < hpo::kSearchDims; ++d) target(d) = u01(rng);
    auto f = [&](const ml::RFConfig& c) { return (hpo::encode(c, space) - target).squaredNorm(); };

    std::vector<double> all;
    for (const auto& c : grid) all.push_back(f(c));
    std::sort(all.begin(), all.end());
    double cutoff = all[grid.size() / 100 - 1];

    hpo::BOOptions opts;
    opts.seed = seed;
    auto r = hpo::bayesian_optimize([&](const ml::RFConfig& c) { return hpo::Evaluation{f(c), {}}; }, space, opts);
    bool hit = r.trace.size() == 50 && r.best().objective <= cutoff;
    hits += hit;
    auto rank = std::upper_bound(all.begin(), all.end(), r.best().objective) - all.begin();
    detail += std::string(detail.empty() ? "" : ",") + std::to_string(rank);
  }
  return {hits >= 9, std::to_string(hits) + "/10 seeds in the top 1%; best ranks " + detail};
}

Outcome end_to_end() {
  fs::path root = fs::path(ONSET_TEST_TMP);
  std::array<double, 2> seconds{};
  std::array<fs::path, 2> dirs{root / "pipeline_a", root / "pipeline_b"};
  for (int run = 0; run < 2; ++run) {
    fs::remove_all(dirs[run]);
    auto cfg = app::load_run_config(fixtures::path("grid24.conf"));
    cfg.output_dir = dirs[run].string();
    cfg.workers = cores();
    std::ostringstream log, err;
    auto t0 = Clock::now();
    int code = app::cmd_pipeline(cfg, log, err);
    seconds[run] = seconds_since(t0);
    if (code != app::kExitOk) return {false, "pipeline exit " + std::to_string(code) + ": " + err.str()};
  }
  auto j = nlohmann::json::parse(artifacts::slurp(dirs[0] / "report.json"));
  double baseline = j["dataset"]["majority_baseline"].get<double>();
  std::size_t samples = j["dataset"]["samples"].get<std::size_t>();
  double rf = -1;
  for (const auto& m : j["models"]) {
    if (m["slug"] == "random_forest" && m["ok"].get<bool>()) rf = m["test_accuracy"].get<double>();
  }
  auto diffs = artifacts::diff_modulo_timing(dirs[0], dirs[1]);
  bool ok = samples == 561 && seconds[0] < 300 && seconds[1] < 300 && rf >= baseline + 0.05 && diffs.empty();
  std::string detail = std::to_string(samples) + " samples, runs " + fmt(seconds[0]) + " s / " +
                       fmt(seconds[1]) + " s, RF " + fmt(rf) + " vs baseline " + fmt(baseline) + ", " +
                       std::to_string(diffs.size()) + " differing files";
  for (const auto& d : diffs) detail += " [" + d + "]";
  return {ok, detail};
}

Outcome metric_identity() {
  std::mt19937_64 rng(10);
  std::size_t bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::size_t n = 1 + rng() % 500;
    std::vector<int> t(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % 3);
      p[i] = rng() % 4 == 0 ? static_cast<int>(rng() % 3) : t[i];
    }
    std::size_t hit = 0;
    for (std::size_t i = 0; i < n; ++i) hit += t[i] == p[i];
    double direct = static_cast<double>(hit) / static_cast<double>(n);
    bad += report::accuracy(report::confusion_matrix(t, p)) != direct;
  }
  return {bad == 0, "1000 prediction sets, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"power-flow oracle", power_flow_oracle},
      {"labeling partition", labeling_partition},
      {"forest degeneracy", forest_degeneracy},
      {"training accuracy 1.0 for tree and forest", training_accuracy},
      {"gradient checks", gradient_checks},
      {"GP and EI correctness", gp_and_ei},
      {"BO never worse than the default", bo_improvement},
      {"BO reaches the top 1% of the grid", bo_oracle},
      {"end-to-end desk-scale pipeline", end_to_end},
      {"metric identity", metric_identity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << " (" << fmt(seconds_since(t0)) << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

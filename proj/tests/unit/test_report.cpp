#include <doctest.h>

#include <json.hpp>
#include <random>

#include "fixtures.hpp"
#include "onset/report/compare.hpp"
#include "onset/report/metrics.hpp"
#include "onset/report/pca.hpp"
#include "onset/report/writers.hpp"
#include "onset/util/rng.hpp"
#include "oracles.hpp"

using namespace onset;
using namespace onset::report;

namespace {

ml::LabeledData blobs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  ml::LabeledData d{ml::Matrix(n, 4), std::vector<int>(static_cast<std::size_t>(n)), 3};
  for (int i = 0; i < n; ++i) {
    int c = i % 3;
    d.y[static_cast<std::size_t>(i)] = c;
    for (int j = 0; j < 4; ++j) d.x(i, j) = n01(rng) + (j == c ? 3.0 : 0.0);
  }
  return d;
}

}  // namespace

TEST_CASE("confusion matrix examples") {
  std::vector<int> t{0, 0, 1, 1, 2, 2}, p{0, 1, 1, 1, 2, 0};
  auto cm = confusion_matrix(t, p);
  CHECK(cm.counts[0][0] == 1);
  CHECK(cm.counts[0][1] == 1);
  CHECK(cm.counts[1][1] == 2);
  CHECK(cm.counts[2][2] == 1);
  CHECK(cm.counts[2][0] == 1);
  CHECK(cm.total() == 6);
  CHECK(cm.correct() == 4);
  CHECK(cm.truth_counts() == std::array<std::size_t, 3>{2, 2, 2});
  CHECK(cm.predicted_counts() == std::array<std::size_t, 3>{2, 3, 1});
  CHECK(format_confusion_csv(cm) == "truth\\predicted,1,2,3\n1,1,1,0\n2,0,2,0\n3,1,0,1\n");

  std::vector<sim::OnsetClass> tc{sim::OnsetClass::Critical, sim::OnsetClass::RelativelyCritical};
  std::vector<sim::OnsetClass> pc{sim::OnsetClass::Critical, sim::OnsetClass::NonCritical};
  auto cc = confusion_matrix(tc, pc);
  CHECK(cc.counts[1][1] == 1);
  CHECK(cc.counts[2][0] == 1);

  std::vector<int> shorter{0}, bad{3, 0, 0, 0, 0, 0}, none;
  CHECK_THROWS_AS(confusion_matrix(t, shorter), std::invalid_argument);
  CHECK_THROWS_AS(confusion_matrix(bad, p), std::invalid_argument);
  CHECK_THROWS_AS(confusion_matrix(none, none), std::invalid_argument);
  CHECK_THROWS_AS(accuracy(ConfusionMatrix{}), std::invalid_argument);
}

TEST_CASE("accuracy and tallies against a direct count") {
  std::vector<int> t(20, 0), p(20, 0);
  p[3] = 1;
  p[7] = 2;
  CHECK(accuracy(confusion_matrix(t, p)) == 0.9);

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 1 + rng() % 60;
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<int>(rng() % 3), b[i] = static_cast<int>(rng() % 3);
    auto cm = confusion_matrix(a, b);
    std::size_t hit = 0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) k += a[i] == r && b[i] == c;
        CHECK(cm.counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == k);
      }
    }
    for (std::size_t i = 0; i < n; ++i) hit += a[i] == b[i];
    CHECK(accuracy(cm) == static_cast<double>(hit) / static_cast<double>(n));
  }
}

TEST_CASE("model comparison") {
  auto train = blobs(120, 1), test = blobs(60, 2);
  ml::LearnerSuiteConfig cfg;
  cfg.forest.n_trees = 20;
  cfg.mlp.epochs = 30;
  std::vector<ml::ClassifierModel> models;
  auto a = compare_models(train, test, cfg, 9, 1, &models);
  auto b = compare_models(train, test, cfg, 9, 2);
  REQUIRE(a.rows.size() == 6);
  CHECK(models.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.rows[i].kind == ml::kAllLearners[i]);
    CHECK(a.rows[i].ok);
    CHECK(a.rows[i].test_accuracy == b.rows[i].test_accuracy);
    CHECK(a.rows[i].train_accuracy == b.rows[i].train_accuracy);
    CHECK(a.rows[i].test_confusion.counts == b.rows[i].test_confusion.counts);
    CHECK(a.rows[i].test_confusion.total() == 60);
    CHECK(a.rows[i].test_accuracy > 0.7);
    CHECK(models[i].meta.seed == derive_seed(9, ml::slug(ml::kAllLearners[i])));
  }
  CHECK(majority_baseline(train, test) == doctest::Approx(1.0 / 3.0));

  auto sc = sweep_scenarios({2, 3}, 1.1);
  REQUIRE(sc.size() == 3);
  CHECK(sc[0].name == "N-2");
  CHECK(sc[1].name == "N-2 Modified");
  CHECK(sc[1].load_scale == 1.1);
  CHECK(sc[2].name == "N-3");
}

TEST_CASE("pca on a rank-one set and isometry") {
  ml::Matrix line(5, 3);
  for (int i = 0; i < 5; ++i) line.row(i) << i, 2.0 * i, -1.0 * i;
  auto e = pca_embedding(line, {1, 2, 3, 1, 2});
  CHECK(e.rank == 1);
  CHECK(e.coords.col(1).isZero());
  CHECK(e.coords.col(2).isZero());
  CHECK(std::abs(e.axes.col(0).norm() - 1.0) < 1e-12);
  CHECK(e.axes(1, 0) > 0);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  ml::Matrix x(30, 3);
  for (long i = 0; i < x.size(); ++i) x.data()[i] = n01(rng);
  auto full = pca_embedding(x, std::vector<int>(30, 1));
  CHECK(full.rank == 3);
  ml::Matrix centered = x.rowwise() - x.colwise().mean();
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      double d0 = (centered.row(i) - centered.row(j)).norm();
      double d1 = (full.coords.row(i) - full.coords.row(j)).norm();
      CHECK(std::abs(d0 - d1) < 1e-9);
    }
  }
  CHECK(format_embedding_csv(full).rfind("x,y,z,class\n", 0) == 0);
}

TEST_CASE("pca matches a Jacobi eigendecomposition") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  ml::Matrix x(10, 5);
  for (long i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  auto e = pca_embedding(x, std::vector<int>(10, 2));

  ml::Matrix c = x.rowwise() - x.colwise().mean();
  oracle::Mat cov(5, std::vector<double>(5, 0.0));
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int i = 0; i < 10; ++i) cov[a][b] += c(i, a) * c(i, b) / 10.0;
    }
  }
  auto [vals, vecs] = oracle::jacobi_eigen(cov);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(e.explained_variance(k) - vals[static_cast<std::size_t>(k)]) < 1e-9);
    // Same sign convention: the largest-magnitude loading is positive.
    int arg = 0;
    for (int f = 1; f < 5; ++f) {
      if (std::abs(vecs[f][k]) > std::abs(vecs[arg][k])) arg = f;
    }
    double s = vecs[arg][k] > 0 ? 1.0 : -1.0;
    for (int f = 0; f < 5; ++f) CHECK(std::abs(e.axes(f, k) - s * vecs[f][k]) < 1e-9);
    for (int i = 0; i < 10; ++i) {
      double proj = 0;
      for (int f = 0; f < 5; ++f) proj += c(i, f) * s * vecs[f][k];
      CHECK(std::abs(e.coords(i, k) - proj) < 1e-9);
    }
  }
}

TEST_CASE("report json and markdown") {
  auto train = blobs(60, 4), test = blobs(30, 5);
  ml::LearnerSuiteConfig cfg;
  cfg.forest.n_trees = 10;
  cfg.mlp.epochs = 10;
  RunReport r;
  r.seed = 42;
  r.models = compare_models(train, test, cfg, 42);
  DatasetSummary ds;
  ds.samples = 90;
  ds.feature_dim = 4;
  ds.train_samples = 60;
  ds.test_samples = 30;
  ds.class_counts = {30, 30, 30};
  ds.majority_baseline = majority_baseline(train, test);
  r.dataset = ds;
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["seed"] == 42);
  REQUIRE(j["models"].size() == 6);
  CHECK(j["models"][1]["test_accuracy"].get<double>() == r.models.rows[1].test_accuracy);
  CHECK(j["models"][0].contains("train_seconds"));
  CHECK(j["dataset"]["samples"] == 90);

  auto md = report_markdown(r);
  CHECK(md.find("Train Time (s)") != std::string::npos);
  CHECK(md.find("Random Forest") != std::string::npos);
}

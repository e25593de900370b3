#pragma once

// Central finite differences over every parameter entry. The reported
// relative error is ||analytic - numeric|| / max(||analytic||, ||numeric||).

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "onset/ml/logreg.hpp"
#include "onset/ml/mlp.hpp"

namespace gradcheck {

struct Batch {
  onset::ml::Matrix x;
  std::vector<int> y;
};

inline Batch random_batch(int rows, int cols, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Batch b{onset::ml::Matrix(rows, cols), std::vector<int>(static_cast<std::size_t>(rows))};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) b.x(i, j) = n01(rng);
    b.y[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<unsigned>(classes));
  }
  return b;
}

inline double rel_error(const std::vector<double>& a, const std::vector<double>& n) {
  double diff = 0, na = 0, nn = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - n[i]) * (a[i] - n[i]);
    na += a[i] * a[i];
    nn += n[i] * n[i];
  }
  double denom = std::max(std::sqrt(na), std::sqrt(nn));
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

template <class Params, class Loss, class Fields>
double check(Params p, Loss loss, Fields fields, const Params& analytic, double h) {
  std::vector<double> a, n;
  auto pf = fields(p);
  auto af = fields(const_cast<Params&>(analytic));
  for (std::size_t f = 0; f < pf.size(); ++f) {
    double* v = pf[f].first;
    const double* g = af[f].first;
    for (long i = 0; i < pf[f].second; ++i) {
      double keep = v[i];
      v[i] = keep + h;
      double up = loss(p);
      v[i] = keep - h;
      double down = loss(p);
      v[i] = keep;
      n.push_back((up - down) / (2 * h));
      a.push_back(g[i]);
    }
  }
  return rel_error(a, n);
}

/// Logistic regression, random weights, rows x cols batch, 3 classes.
inline double logreg_error(int rows, int cols, std::uint64_t seed, double l2 = 1e-3) {
  using namespace onset::ml;
  auto b = random_batch(rows, cols, 3, seed);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> n01;
  SoftmaxParams p{Matrix(3, cols), Vector(3)};
  for (long i = 0; i < p.w.size(); ++i) p.w.data()[i] = 0.5 * n01(rng);
  for (long i = 0; i < p.b.size(); ++i) p.b(i) = 0.5 * n01(rng);
  auto g = logreg_loss_grad(p, b.x, b.y, l2);
  auto loss = [&](const SoftmaxParams& q) { return logreg_loss_grad(q, b.x, b.y, l2).loss; };
  auto fields = [](SoftmaxParams& q) {
    return std::vector<std::pair<double*, long>>{{q.w.data(), q.w.size()}, {q.b.data(), q.b.size()}};
  };
  return check(p, loss, fields, g.grad, 1e-5);
}

/// One-hidden-layer network with He-initialized weights.
inline double mlp_error(int rows, int cols, int hidden, std::uint64_t seed, double l2 = 1e-3) {
  using namespace onset::ml;
  auto b = random_batch(rows, cols, 3, seed);
  std::mt19937_64 rng(seed + 1);
  auto p = mlp_init(cols, hidden, 3, rng);
  std::normal_distribution<double> n01;
  for (long i = 0; i < p.b1.size(); ++i) p.b1(i) = 0.1 * n01(rng);
  for (long i = 0; i < p.b2.size(); ++i) p.b2(i) = 0.1 * n01(rng);
  auto g = mlp_loss_grad(p, b.x, b.y, l2);
  auto loss = [&](const MlpParams& q) { return mlp_loss_grad(q, b.x, b.y, l2).loss; };
  auto fields = [](MlpParams& q) {
    return std::vector<std::pair<double*, long>>{{q.w1.data(), q.w1.size()},
                                                 {q.b1.data(), q.b1.size()},
                                                 {q.w2.data(), q.w2.size()},
                                                 {q.b2.data(), q.b2.size()}};
  };
  return check(p, loss, fields, g.grad, 1e-5);
}

}  // namespace gradcheck

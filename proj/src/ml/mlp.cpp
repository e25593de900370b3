#include "onset/ml/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "onset/ml/logreg.hpp"

namespace onset::ml {

MlpParams mlp_init(int num_features, int hidden_units, int num_classes, Rng& rng) {
  MlpParams p;
  std::normal_distribution<double> n1(0.0, std::sqrt(2.0 / std::max(num_features, 1)));
  std::normal_distribution<double> n2(0.0, std::sqrt(2.0 / std::max(hidden_units, 1)));
  p.w1.resize(hidden_units, num_features);
  for (Eigen::Index i = 0; i < p.w1.size(); ++i) p.w1.data()[i] = n1(rng);
  p.b1 = Vector::Zero(hidden_units);
  p.w2.resize(num_classes, hidden_units);
  for (Eigen::Index i = 0; i < p.w2.size(); ++i) p.w2.data()[i] = n2(rng);
  p.b2 = Vector::Zero(num_classes);
  return p;
}

MlpLossGrad mlp_loss_grad(const MlpParams& p, const Matrix& x, std::span<const int> y, double l2) {
  const auto n = x.rows();
  MlpLossGrad out;
  out.grad.w1 = Matrix::Zero(p.w1.rows(), p.w1.cols());
  out.grad.b1 = Vector::Zero(p.b1.size());
  out.grad.w2 = Matrix::Zero(p.w2.rows(), p.w2.cols());
  out.grad.b2 = Vector::Zero(p.b2.size());

  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector pre = p.w1 * x.row(i).transpose() + p.b1;
    Vector h = pre.cwiseMax(0.0);
    Vector z = p.w2 * h + p.b2;
    double m = z.maxCoeff();
    double lse = m + std::log((z.array() - m).exp().sum());
    int yi = y[static_cast<std::size_t>(i)];
    loss += lse - z(yi);

    Vector dz = (z.array() - lse).exp().matrix();
    dz(yi) -= 1.0;
    out.grad.w2.noalias() += dz * h.transpose();
    out.grad.b2 += dz;
    Vector dh = p.w2.transpose() * dz;
    Vector dpre = (pre.array() > 0.0).select(dh, 0.0);
    out.grad.w1.noalias() += dpre * x.row(i);
    out.grad.b1 += dpre;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss = loss * inv_n + 0.5 * l2 * (p.w1.squaredNorm() + p.w2.squaredNorm());
  out.grad.w1 = out.grad.w1 * inv_n + l2 * p.w1;
  out.grad.b1 *= inv_n;
  out.grad.w2 = out.grad.w2 * inv_n + l2 * p.w2;
  out.grad.b2 *= inv_n;
  return out;
}

MlpModel train_mlp(const LabeledData& data, const MlpConfig& cfg) {
  validate(data);
  if (data.rows() == 0) throw TrainingError("cannot train the neural network on no data");
  if (cfg.hidden_units < 1 || cfg.batch_size < 1 || cfg.epochs < 0) {
    throw std::invalid_argument("invalid neural network configuration");
  }
  Rng rng = make_rng(cfg.seed);
  MlpModel m;
  m.scaler = Standardizer::fit(data.x);
  Matrix xs = m.scaler.apply(data.x);
  m.params = mlp_init(static_cast<int>(xs.cols()), cfg.hidden_units, data.num_classes, rng);

  const std::size_t n = data.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Matrix xb;
  std::vector<int> yb;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
      std::size_t end = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
      xb.resize(static_cast<Eigen::Index>(end - start), xs.cols());
      yb.resize(end - start);
      for (std::size_t r = start; r < end; ++r) {
        xb.row(static_cast<Eigen::Index>(r - start)) = xs.row(static_cast<Eigen::Index>(order[r]));
        yb[r - start] = data.y[order[r]];
      }
      auto lg = mlp_loss_grad(m.params, xb, yb, cfg.l2);
      if (!std::isfinite(lg.loss)) {
        throw TrainingError("neural network loss became non-finite at epoch " +
                            std::to_string(epoch) + " (learning_rate=" +
                            std::to_string(cfg.learning_rate) + ")");
      }
      m.params.w1 -= cfg.learning_rate * lg.grad.w1;
      m.params.b1 -= cfg.learning_rate * lg.grad.b1;
      m.params.w2 -= cfg.learning_rate * lg.grad.w2;
      m.params.b2 -= cfg.learning_rate * lg.grad.b2;
    }
  }
  return m;
}

Vector MlpModel::probabilities(std::span<const double> row) const {
  if (static_cast<Eigen::Index>(row.size()) != params.w1.cols()) {
    throw std::invalid_argument("feature dimension mismatch");
  }
  Vector h = (params.w1 * scaler.apply_row(row) + params.b1).cwiseMax(0.0);
  return softmax(params.w2 * h + params.b2);
}

int MlpModel::predict(std::span<const double> row) const {
  Vector p = probabilities(row);
  return argmax_lowest(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

}  // namespace onset::ml

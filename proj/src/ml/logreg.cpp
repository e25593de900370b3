#include "onset/ml/logreg.hpp"

#include <cmath>
#include <string>

namespace onset::ml {

Vector softmax(const Vector& logits) {
  Vector e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

LossGrad logreg_loss_grad(const SoftmaxParams& p, const Matrix& x, std::span<const int> y,
                          double l2) {
  const auto n = x.rows();
  LossGrad out;
  out.grad.w = Matrix::Zero(p.w.rows(), p.w.cols());
  out.grad.b = Vector::Zero(p.b.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector z = p.w * x.row(i).transpose() + p.b;
    double m = z.maxCoeff();
    double lse = m + std::log((z.array() - m).exp().sum());
    int yi = y[static_cast<std::size_t>(i)];
    loss += lse - z(yi);
    Vector delta = (z.array() - lse).exp().matrix();
    delta(yi) -= 1.0;
    out.grad.w.noalias() += delta * x.row(i);
    out.grad.b += delta;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss = loss * inv_n + 0.5 * l2 * p.w.squaredNorm();
  out.grad.w = out.grad.w * inv_n + l2 * p.w;
  out.grad.b *= inv_n;
  return out;
}

LogRegModel train_logreg(const LabeledData& data, const LogRegConfig& cfg) {
  validate(data);
  if (data.rows() == 0) throw TrainingError("cannot train logistic regression on no data");
  LogRegModel m;
  m.scaler = Standardizer::fit(data.x);
  Matrix xs = m.scaler.apply(data.x);
  m.params.w = Matrix::Zero(data.num_classes, xs.cols());
  m.params.b = Vector::Zero(data.num_classes);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto lg = logreg_loss_grad(m.params, xs, data.y, cfg.l2);
    if (!std::isfinite(lg.loss)) {
      throw TrainingError("logistic regression loss became non-finite at epoch " +
                          std::to_string(epoch) + " (learning_rate=" +
                          std::to_string(cfg.learning_rate) + ")");
    }
    m.params.w -= cfg.learning_rate * lg.grad.w;
    m.params.b -= cfg.learning_rate * lg.grad.b;
  }
  return m;
}

Vector LogRegModel::probabilities(std::span<const double> row) const {
  if (static_cast<Eigen::Index>(row.size()) != params.w.cols()) {
    throw std::invalid_argument("feature dimension mismatch");
  }
  return softmax(params.w * scaler.apply_row(row) + params.b);
}

int LogRegModel::predict(std::span<const double> row) const {
  Vector p = probabilities(row);
  return argmax_lowest(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

}  // namespace onset::ml

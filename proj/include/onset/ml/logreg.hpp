#pragma once

#include <span>

#include "onset/ml/data.hpp"

namespace onset::ml {

/// Affine softmax layer: logits = w * x + b, w is classes x features.
struct SoftmaxParams {
  Matrix w;
  Vector b;
};

Vector softmax(const Vector& logits);

struct LossGrad {
  double loss = 0.0;
  SoftmaxParams grad;
};

/// Mean cross-entropy plus (l2 / 2) * ||w||^2 and its exact gradient.
LossGrad logreg_loss_grad(const SoftmaxParams& p, const Matrix& x, std::span<const int> y,
                          double l2);

struct LogRegConfig {
  double learning_rate = 0.5;
  int epochs = 300;
  double l2 = 1e-4;
};

struct LogRegModel {
  Standardizer scaler;
  SoftmaxParams params;

  Vector probabilities(std::span<const double> row) const;
  int predict(std::span<const double> row) const;
};

/// Full-batch gradient descent on standardized features. Throws
/// TrainingError when the loss becomes non-finite.
LogRegModel train_logreg(const LabeledData& data, const LogRegConfig& cfg);

}  // namespace onset::ml

#pragma once

#include <cstdint>
#include <span>

#include "onset/ml/data.hpp"
#include "onset/util/rng.hpp"

namespace onset::ml {

/// One hidden ReLU layer followed by a softmax output layer.
struct MlpParams {
  Matrix w1;  // hidden x features
  Vector b1;
  Matrix w2;  // classes x hidden
  Vector b2;
};

struct MlpLossGrad {
  double loss = 0.0;
  MlpParams grad;
};

/// He-normal weights, zero biases.
MlpParams mlp_init(int num_features, int hidden_units, int num_classes, Rng& rng);

/// Mean cross-entropy plus (l2 / 2) * (||w1||^2 + ||w2||^2) and its gradient.
MlpLossGrad mlp_loss_grad(const MlpParams& p, const Matrix& x, std::span<const int> y, double l2);

struct MlpConfig {
  int hidden_units = 64;
  double learning_rate = 0.05;
  int epochs = 200;
  int batch_size = 32;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

struct MlpModel {
  Standardizer scaler;
  MlpParams params;

  Vector probabilities(std::span<const double> row) const;
  int predict(std::span<const double> row) const;
};

/// Mini-batch SGD on standardized inputs; deterministic in cfg.seed.
/// Throws TrainingError if the loss becomes non-finite.
MlpModel train_mlp(const LabeledData& data, const MlpConfig& cfg);

}  // namespace onset::ml

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <stdexcept>

namespace onset::hpo {

struct KernelConfig {
  double lengthscale = 0.5;  // same for every encoded dimension
  double noise_variance = 1e-6;
};

class GPError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Posterior {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Gaussian-process regression with a squared-exponential kernel
///   k(x, x') = s2 * exp(-sum_d (x_d - x'_d)^2 / (2 l_d^2))
/// on mean-centred targets, s2 = population variance of the targets (1 if
/// they are all equal). The covariance K + noise*I is Cholesky-factorized;
/// on failure a jitter of 1e-10, 1e-9, ... up to 1e-4 is added to the diagonal.
class GPModel {
 public:
  /// Rows of `x` are inputs. Needs >= 2 distinct rows; throws GPError otherwise
  /// or if factorization fails even at the largest jitter.
  static GPModel fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelConfig& cfg = {});

  Posterior posterior(const Eigen::VectorXd& x) const;
  double kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  const Eigen::MatrixXd& inputs() const noexcept { return x_; }
  const Eigen::VectorXd& targets() const noexcept { return y_; }
  const Eigen::VectorXd& lengthscales() const noexcept { return lengthscales_; }
  double target_mean() const noexcept { return y_mean_; }
  double signal_variance() const noexcept { return signal_var_; }
  double noise_variance() const noexcept { return noise_var_; }
  double jitter() const noexcept { return jitter_; }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  Eigen::VectorXd lengthscales_;
  double y_mean_ = 0.0;
  double signal_var_ = 1.0;
  double noise_var_ = 0.0;
  double jitter_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
};

inline GPModel gp_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelConfig& cfg = {}) {
  return GPModel::fit(x, y, cfg);
}

inline Posterior gp_posterior(const GPModel& model, const Eigen::VectorXd& x) {
  return model.posterior(x);
}

}  // namespace onset::hpo

#include "onset/hpo/gp.hpp"

#include <cmath>

namespace onset::hpo {

double GPModel::kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  double r2 = ((a - b).array() / lengthscales_.array()).square().sum();
  return signal_var_ * std::exp(-0.5 * r2);
}

GPModel GPModel::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelConfig& cfg) {
  const auto n = x.rows();
  if (n < 2) throw GPError("GP fit needs at least 2 points");
  if (y.size() != n) throw GPError("GP fit: target count differs from input count");
  if (!(cfg.lengthscale > 0.0) || cfg.noise_variance < 0.0) throw GPError("invalid kernel settings");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (x.row(i) == x.row(j)) throw GPError("GP fit: duplicate input encodings");
    }
  }

  GPModel m;
  m.x_ = x;
  m.y_ = y;
  m.lengthscales_ = Eigen::VectorXd::Constant(x.cols(), cfg.lengthscale);
  m.y_mean_ = y.mean();
  double var = (y.array() - m.y_mean_).square().mean();
  m.signal_var_ = var > 0.0 ? var : 1.0;
  m.noise_var_ = cfg.noise_variance;

  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = m.kernel(x.row(i).transpose(), x.row(j).transpose());
    }
  }
  k.diagonal().array() += m.noise_var_;

  for (double jitter = 0.0;;) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    m.chol_.compute(kj);
    if (m.chol_.info() == Eigen::Success) {
      m.jitter_ = jitter;
      break;
    }
    if (jitter >= 1e-4) throw GPError("GP covariance is not positive definite at maximum jitter");
    jitter = jitter == 0.0 ? 1e-10 : jitter * 10.0;
  }
  m.alpha_ = m.chol_.solve((y.array() - m.y_mean_).matrix());
  return m;
}

Posterior GPModel::posterior(const Eigen::VectorXd& x) const {
  Eigen::VectorXd ks(x_.rows());
  for (Eigen::Index i = 0; i < x_.rows(); ++i) ks(i) = kernel(x_.row(i).transpose(), x);
  Posterior p;
  p.mean = y_mean_ + ks.dot(alpha_);
  Eigen::VectorXd v = chol_.matrixL().solve(ks);
  double var = signal_var_ - v.squaredNorm();
  p.stddev = std::sqrt(std::max(var, 0.0));
  return p;
}

}  // namespace onset::hpo

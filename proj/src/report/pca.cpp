#include "onset/report/pca.hpp"

#include <Eigen/Eigenvalues>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "onset/util/text.hpp"

namespace onset::report {

Embedding pca_embedding(const ml::Matrix& x, std::vector<int> class_codes, int dims) {
  if (dims < 1) throw std::invalid_argument("embedding needs at least one dimension");
  const auto n = x.rows(), d = x.cols();
  if (static_cast<std::size_t>(n) != class_codes.size()) {
    throw std::invalid_argument("one class per sample required");
  }
  if (d < dims) throw std::invalid_argument("feature dimension below embedding dimension");
  if (n < dims + 1) throw std::invalid_argument("too few samples for the embedding");

  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw std::runtime_error("covariance eigensolver failed");
  // Eigen sorts ascending.
  const Eigen::VectorXd& values = eig.eigenvalues();
  const Eigen::MatrixXd& vectors = eig.eigenvectors();
  const double top = std::max(values(d - 1), 0.0);
  const double cutoff = 1e-12 * std::max(top, 1.0);

  Embedding e;
  e.class_codes = std::move(class_codes);
  e.axes = ml::Matrix::Zero(d, dims);
  e.explained_variance = Eigen::VectorXd::Zero(dims);
  for (int j = 0; j < dims; ++j) {
    const Eigen::Index src = d - 1 - j;
    if (values(src) <= cutoff) break;
    Eigen::VectorXd v = vectors.col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    }
    if (v(arg) < 0) v = -v;
    e.axes.col(j) = v;
    e.explained_variance(j) = values(src);
    ++e.rank;
  }
  if (e.rank < dims) {
    std::clog << "warning: covariance has rank " << e.rank << " < " << dims
              << "; padding the embedding with zeros\n";
  }
  e.coords = centered * e.axes;
  return e;
}

Embedding pca_embedding(const features::Dataset& data, int dims) {
  auto labeled = data.to_labeled();
  std::vector<int> codes;
  codes.reserve(data.size());
  for (const auto& s : data.samples()) codes.push_back(sim::class_code(s.label));
  return pca_embedding(labeled.x, std::move(codes), dims);
}

std::string format_embedding_csv(const Embedding& e) {
  static constexpr const char* kNames[] = {"x", "y", "z"};
  std::ostringstream out;
  for (Eigen::Index j = 0; j < e.coords.cols(); ++j) {
    out << (j < 3 ? std::string(kNames[j]) : "d" + std::to_string(j)) << ',';
  }
  out << "class\n";
  for (Eigen::Index i = 0; i < e.coords.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.coords.cols(); ++j) {
      out << text::format_exact(e.coords(i, j)) << ',';
    }
    out << e.class_codes[static_cast<std::size_t>(i)] << '\n';
  }
  return out.str();
}

}  // namespace onset::report

#pragma once

#include <string>
#include <vector>

#include "onset/features/dataset.hpp"
#include "onset/ml/data.hpp"

namespace onset::report {

struct Embedding {
  ml::Matrix coords;               // samples x dims
  std::vector<int> class_codes;    // serialized class per sample
  Eigen::VectorXd explained_variance;  // eigenvalue per kept axis, descending
  ml::Matrix axes;                 // features x dims, unit columns
  int rank = 0;                    // number of non-degenerate axes
};

/// Projects mean-centered rows onto the top `dims` eigenvectors of the
/// population covariance. Each axis is signed so that its largest-magnitude
/// loading is positive. Axes with (relatively) zero variance are dropped:
/// their coordinates, loadings and variance are zero and a warning is
/// written to std::clog.
Embedding pca_embedding(const ml::Matrix& x, std::vector<int> class_codes, int dims = 3);
Embedding pca_embedding(const features::Dataset& data, int dims = 3);

/// CSV `x,y,z,class` (one column per dimension; names beyond z are d3, d4...).
std::string format_embedding_csv(const Embedding& e);

}  // namespace onset::report

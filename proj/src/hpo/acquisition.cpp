#include "onset/hpo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace onset::hpo {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double stddev, double best_objective) {
  if (!(stddev > 0.0)) return 0.0;
  double improve = best_objective - mean;
  double z = improve / stddev;
  return std::max(0.0, improve * normal_cdf(z) + stddev * normal_pdf(z));
}

}  // namespace onset::hpo

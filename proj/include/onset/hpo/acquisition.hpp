#pragma once

namespace onset::hpo {

double normal_pdf(double z);
double normal_cdf(double z);

/// Expected improvement for minimization:
///   z = (best - mean) / stddev,  EI = (best - mean) * Phi(z) + stddev * phi(z).
/// Returns 0 when stddev == 0 (nothing left to learn at a known point) and
/// never returns a negative value.
double expected_improvement(double mean, double stddev, double best_objective);

}  // namespace onset::hpo

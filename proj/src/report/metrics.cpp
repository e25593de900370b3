#include "onset/report/metrics.hpp"

#include <sstream>
#include <stdexcept>

namespace onset::report {

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t s = 0;
  for (const auto& row : counts)
    for (auto c : row) s += c;
  return s;
}

std::size_t ConfusionMatrix::correct() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) s += counts[i][i];
  return s;
}

std::array<std::size_t, sim::kNumClasses> ConfusionMatrix::truth_counts() const noexcept {
  std::array<std::size_t, sim::kNumClasses> out{};
  for (std::size_t t = 0; t < counts.size(); ++t)
    for (auto c : counts[t]) out[t] += c;
  return out;
}

std::array<std::size_t, sim::kNumClasses> ConfusionMatrix::predicted_counts() const noexcept {
  std::array<std::size_t, sim::kNumClasses> out{};
  for (const auto& row : counts)
    for (std::size_t p = 0; p < row.size(); ++p) out[p] += row[p];
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("truth and prediction lengths differ");
  }
  if (truth.empty()) throw std::invalid_argument("confusion matrix of no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    int t = truth[i], p = predicted[i];
    if (t < 0 || t >= sim::kNumClasses || p < 0 || p >= sim::kNumClasses) {
      throw std::invalid_argument("class index out of range");
    }
    ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
  }
  return cm;
}

ConfusionMatrix confusion_matrix(std::span<const sim::OnsetClass> truth,
                                 std::span<const sim::OnsetClass> predicted) {
  std::vector<int> t, p;
  for (auto c : truth) t.push_back(sim::class_index(c));
  for (auto c : predicted) p.push_back(sim::class_index(c));
  return confusion_matrix(std::span<const int>(t), std::span<const int>(p));
}

double accuracy(const ConfusionMatrix& cm) {
  std::size_t n = cm.total();
  if (n == 0) throw std::invalid_argument("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.correct()) / static_cast<double>(n);
}

std::string format_confusion_csv(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "truth\\predicted";
  for (auto c : sim::kAllClasses) out << ',' << sim::class_code(c);
  out << '\n';
  for (std::size_t t = 0; t < cm.counts.size(); ++t) {
    out << sim::class_code(sim::kAllClasses[t]);
    for (auto c : cm.counts[t]) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

}  // namespace onset::report

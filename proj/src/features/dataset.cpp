#include "onset/features/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "onset/util/parallel.hpp"
#include "onset/util/rng.hpp"
#include "onset/util/text.hpp"

namespace onset::features {

void Dataset::add(Sample s) {
  if (s.features.size() != feature_dim_) {
    throw std::invalid_argument("sample has " + std::to_string(s.features.size()) +
                                " features, dataset expects " + std::to_string(feature_dim_));
  }
  for (double v : s.features) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
  }
  ++counts_[static_cast<std::size_t>(sim::class_index(s.label))];
  samples_.push_back(std::move(s));
}

ml::LabeledData Dataset::to_labeled() const {
  ml::LabeledData d;
  d.num_classes = sim::kNumClasses;
  d.x.resize(static_cast<Eigen::Index>(samples_.size()), static_cast<Eigen::Index>(feature_dim_));
  d.y.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    for (std::size_t j = 0; j < feature_dim_; ++j) {
      d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = samples_[i].features[j];
    }
    d.y.push_back(sim::class_index(samples_[i].label));
  }
  return d;
}

std::vector<FeatureVector> featurize(const grid::GridCase& c,
                                     const std::vector<sim::ContingencySpec>& specs,
                                     unsigned workers) {
  const auto base = power_matrix(grid::solve_dc_power_flow(c), c);
  std::vector<FeatureVector> out(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    sim::validate(specs[i], c);
    out[i] = contingency_features(c, base, specs[i].removed_branch_ids);
  });
  return out;
}

Dataset assemble_dataset(const grid::GridCase& c, const std::vector<sim::ContingencySpec>& specs,
                         const sim::SimulationConfig& cfg, unsigned workers) {
  auto feats = featurize(c, specs, workers);
  auto outcomes = sim::simulate_scenarios(c, specs, cfg, workers);
  Dataset data(c.branch_count());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    data.add({std::move(feats[i]), outcomes[i].label, static_cast<long>(i)});
  }
  return data;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  if (data.empty()) throw std::invalid_argument("cannot split an empty dataset");

  std::array<std::vector<std::size_t>, sim::kNumClasses> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) {
    by_class[static_cast<std::size_t>(sim::class_index(data[i].label))].push_back(i);
  }

  Rng rng = make_rng(seed);
  std::vector<bool> to_train(data.size(), false);
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    // Small epsilon guards products like 0.7 * 14700 landing just below an integer.
    auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(members.size()) + 1e-9));
    for (std::size_t j = 0; j < n_train; ++j) to_train[members[j]] = true;
  }

  Dataset train(data.feature_dim()), test(data.feature_dim());
  for (std::size_t i = 0; i < data.size(); ++i) (to_train[i] ? train : test).add(data[i]);
  return {std::move(train), std::move(test)};
}

std::string format_dataset_csv(const Dataset& data) {
  std::ostringstream out;
  for (std::size_t j = 0; j < data.feature_dim(); ++j) out << "f_" << j << ',';
  out << "label,contingency_id\n";
  for (const auto& s : data.samples()) {
    for (double v : s.features) out << text::format_exact(v) << ',';
    out << sim::class_code(s.label) << ',' << s.contingency_id << '\n';
  }
  return out.str();
}

Dataset parse_dataset_csv(const std::string& source) {
  auto lines = text::split_lines(source);
  if (lines.empty()) throw std::runtime_error("dataset file is empty");
  auto header = text::split(lines[0], ',');
  if (header.size() < 2 || header[header.size() - 2] != "label" ||
      header.back() != "contingency_id") {
    throw std::runtime_error("dataset header must end with label,contingency_id");
  }
  const std::size_t dim = header.size() - 2;
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[j] != "f_" + std::to_string(j)) throw std::runtime_error("bad feature column name");
  }

  Dataset data(dim);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto f = text::split(lines[r], ',');
    if (f.size() != dim + 2) {
      throw std::runtime_error("dataset row " + std::to_string(r + 1) + " has wrong field count");
    }
    Sample s;
    s.features.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) s.features.push_back(text::parse_double(f[j]));
    s.label = sim::class_from_code(static_cast<int>(text::parse_int(f[dim])));
    s.contingency_id = static_cast<long>(text::parse_int(f[dim + 1]));
    data.add(std::move(s));
  }
  return data;
}

}  // namespace onset::features

#include "onset/sim/scenarios.hpp"

#include <sstream>
#include <stdexcept>

#include "onset/util/parallel.hpp"
#include "onset/util/text.hpp"

namespace onset::sim {

std::vector<ScenarioOutcome> simulate_scenarios(const grid::GridCase& c,
                                                const std::vector<ContingencySpec>& specs,
                                                const SimulationConfig& cfg, unsigned workers) {
  validate(cfg.cascade);
  validate(cfg.onset);
  validate(cfg.labeling);
  std::vector<ScenarioOutcome> out(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    ScenarioOutcome& o = out[i];
    o.id = static_cast<long>(i);
    o.profile = run_cascade(c, specs[i], cfg.cascade);
    o.onset_min = detect_onset(o.profile, cfg.onset);
    o.label = label(o.onset_min, cfg.labeling);
  });
  return out;
}

namespace {

std::vector<std::string> data_rows(const std::string& text, std::string_view header) {
  auto lines = text::split_lines(text);
  if (lines.empty() || text::trim(lines.front()) != header) {
    throw std::runtime_error("expected CSV header '" + std::string(header) + "'");
  }
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

std::string format_contingencies_csv(const std::vector<ContingencySpec>& specs) {
  std::ostringstream out;
  out << "contingency_id,k,removed_branch_ids\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out << i << ',' << specs[i].k() << ',';
    for (std::size_t j = 0; j < specs[i].removed_branch_ids.size(); ++j) {
      if (j) out << ';';
      out << specs[i].removed_branch_ids[j];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<ContingencySpec> parse_contingencies_csv(const std::string& text) {
  std::vector<ContingencySpec> specs;
  for (const auto& row : data_rows(text, "contingency_id,k,removed_branch_ids")) {
    auto f = text::split(row, ',');
    if (f.size() != 3) throw std::runtime_error("malformed contingency row: " + row);
    if (text::parse_int(f[0]) != static_cast<long long>(specs.size())) {
      throw std::runtime_error("contingency ids must be 0..n-1 in order");
    }
    ContingencySpec spec;
    for (auto id : text::split(f[2], ';')) spec.removed_branch_ids.push_back(static_cast<int>(text::parse_int(id)));
    if (spec.k() != text::parse_int(f[1])) throw std::runtime_error("k mismatch in row: " + row);
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::string format_profiles_csv(const std::vector<ScenarioOutcome>& outcomes) {
  std::ostringstream out;
  out << "contingency_id,time_min,cumulative_failed\n";
  for (const auto& o : outcomes) {
    for (const auto& e : o.profile.events) {
      out << o.id << ',' << text::format_exact(e.time_min) << ',' << e.cumulative_failed << '\n';
    }
  }
  return out.str();
}

std::string format_labels_csv(const std::vector<ScenarioOutcome>& outcomes) {
  std::ostringstream out;
  out << "contingency_id,onset_min,class\n";
  for (const auto& o : outcomes) {
    out << o.id << ',' << (o.onset_min ? text::format_exact(*o.onset_min) : std::string("-1")) << ','
        << class_code(o.label) << '\n';
  }
  return out.str();
}

std::vector<LabelRecord> parse_labels_csv(const std::string& text) {
  std::vector<LabelRecord> out;
  for (const auto& row : data_rows(text, "contingency_id,onset_min,class")) {
    auto f = text::split(row, ',');
    if (f.size() != 3) throw std::runtime_error("malformed label row: " + row);
    LabelRecord r;
    r.id = static_cast<long>(text::parse_int(f[0]));
    double onset = text::parse_double(f[1]);
    if (onset >= 0.0) r.onset_min = onset;
    r.label = class_from_code(static_cast<int>(text::parse_int(f[2])));
    out.push_back(r);
  }
  return out;
}

}  // namespace onset::sim

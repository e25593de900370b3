#include "onset/grid/grid_case.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "onset/util/text.hpp"

namespace onset::grid {

GridCase::GridCase(std::vector<Bus> buses, std::vector<Branch> branches, double base_mva)
    : buses_(std::move(buses)), branches_(std::move(branches)), base_mva_(base_mva) {
  index_and_validate(true);
}

GridCase::GridCase(Unchecked, std::vector<Bus> buses, std::vector<Branch> branches,
                   double base_mva)
    : buses_(std::move(buses)), branches_(std::move(branches)), base_mva_(base_mva) {
  index_and_validate(false);
}

void GridCase::index_and_validate(bool check_slack) {
  if (!(base_mva_ > 0.0)) throw GridError("nonpositive base MVA");
  if (buses_.empty()) throw GridError("grid case has no buses");

  for (std::size_t i = 0; i < buses_.size(); ++i) {
    if (!bus_pos_.emplace(buses_[i].id, i).second) {
      throw GridError("duplicate bus id " + std::to_string(buses_[i].id));
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const Branch& br = branches_[i];
    if (!branch_pos_.emplace(br.id, i).second) {
      throw GridError("duplicate branch id " + std::to_string(br.id));
    }
    if (!bus_pos_.count(br.from_bus) || !bus_pos_.count(br.to_bus)) {
      throw GridError("branch " + std::to_string(br.id) + " references an unknown bus");
    }
    if (br.from_bus == br.to_bus) {
      throw GridError("branch " + std::to_string(br.id) + " is a self-loop");
    }
    if (!(br.reactance_pu > 0.0)) {
      throw GridError("nonpositive reactance on branch " + std::to_string(br.id));
    }
    if (!(br.rating_mw > 0.0)) {
      throw GridError("nonpositive rating on branch " + std::to_string(br.id));
    }
    auto key = std::minmax(br.from_bus, br.to_bus);
    if (!pairs.insert(key).second) {
      throw GridError("parallel branch " + std::to_string(br.id) + " between buses " +
                      std::to_string(key.first) + " and " + std::to_string(key.second));
    }
  }

  if (!check_slack) return;

  // Union-find over the full topology, then count slacks per component.
  std::vector<std::size_t> parent(buses_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Branch& br : branches_) {
    auto a = find(bus_pos_.at(br.from_bus));
    auto b = find(bus_pos_.at(br.to_bus));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> slacks(buses_.size(), 0);
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    if (buses_[i].is_slack) ++slacks[find(i)];
  }
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    if (find(i) != i) continue;
    if (slacks[i] == 0) {
      throw GridError("missing slack bus in component containing bus " +
                      std::to_string(buses_[i].id));
    }
    if (slacks[i] > 1) {
      throw GridError("multiple slack buses in component containing bus " +
                      std::to_string(buses_[i].id));
    }
  }
}

std::size_t GridCase::bus_index(int bus_id) const {
  auto it = bus_pos_.find(bus_id);
  if (it == bus_pos_.end()) throw GridError("unknown bus id " + std::to_string(bus_id));
  return it->second;
}

std::size_t GridCase::branch_index(int branch_id) const {
  auto it = branch_pos_.find(branch_id);
  if (it == branch_pos_.end()) throw GridError("unknown branch id " + std::to_string(branch_id));
  return it->second;
}

std::vector<int> GridCase::sorted_branch_ids() const {
  std::vector<int> ids;
  ids.reserve(branches_.size());
  for (const auto& br : branches_) ids.push_back(br.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

GridCase GridCase::without_branches(std::span<const int> removed) const {
  std::unordered_set<int> drop;
  for (int id : removed) {
    branch_index(id);
    drop.insert(id);
  }
  std::vector<Branch> kept;
  kept.reserve(branches_.size());
  for (const auto& br : branches_) {
    if (!drop.count(br.id)) kept.push_back(br);
  }
  return GridCase(Unchecked{}, buses_, std::move(kept), base_mva_);
}

GridCase GridCase::scaled_injections(double factor) const {
  auto buses = buses_;
  for (auto& b : buses) {
    b.p_load_mw *= factor;
    b.p_gen_mw *= factor;
  }
  return GridCase(Unchecked{}, std::move(buses), branches_, base_mva_);
}

namespace {

enum class Section { None, Buses, Branches };

[[noreturn]] void fail(const std::string& msg, int line) {
  throw GridError(msg + " at line " + std::to_string(line), line);
}

double field_double(std::string_view f, int line) {
  try {
    return text::parse_double(f);
  } catch (const std::invalid_argument& e) {
    fail(std::string("syntax error: ") + e.what(), line);
  }
}

int field_int(std::string_view f, int line) {
  try {
    return static_cast<int>(text::parse_int(f));
  } catch (const std::invalid_argument& e) {
    fail(std::string("syntax error: ") + e.what(), line);
  }
}

}  // namespace

GridCase parse_grid_case(std::string_view source) {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::vector<int> branch_lines;
  double base_mva = 100.0;
  Section section = Section::None;

  int line_no = 0;
  for (const auto& raw : text::split_lines(source)) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty()) continue;

    if (line.starts_with("#BASE_MVA")) {
      auto parts = text::split(line, ',');
      if (parts.size() != 2) fail("syntax error: expected #BASE_MVA,<value>", line_no);
      base_mva = field_double(parts[1], line_no);
      if (!(base_mva > 0.0)) fail("nonpositive base MVA", line_no);
      continue;
    }
    if (line == "#BUSES") {
      section = Section::Buses;
      continue;
    }
    if (line == "#BRANCHES") {
      section = Section::Branches;
      continue;
    }
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = text::trim(line.substr(0, hash));
    if (line.empty()) continue;

    auto f = text::split(line, ',');
    switch (section) {
      case Section::None:
        fail("syntax error: data row before #BUSES or #BRANCHES", line_no);
      case Section::Buses: {
        if (f.size() != 4) fail("syntax error: bus row needs 4 fields", line_no);
        Bus b;
        b.id = field_int(f[0], line_no);
        b.p_load_mw = field_double(f[1], line_no);
        b.p_gen_mw = field_double(f[2], line_no);
        int slack = field_int(f[3], line_no);
        if (slack != 0 && slack != 1) fail("syntax error: is_slack must be 0 or 1", line_no);
        b.is_slack = slack == 1;
        if (b.p_load_mw < 0.0) fail("negative load", line_no);
        if (b.p_gen_mw < 0.0) fail("negative generation", line_no);
        for (std::size_t i = 0; i < buses.size(); ++i) {
          if (buses[i].id == b.id) fail("duplicate bus id " + std::to_string(b.id), line_no);
        }
        buses.push_back(b);
        break;
      }
      case Section::Branches: {
        if (f.size() != 5) fail("syntax error: branch row needs 5 fields", line_no);
        Branch br;
        br.id = field_int(f[0], line_no);
        br.from_bus = field_int(f[1], line_no);
        br.to_bus = field_int(f[2], line_no);
        br.reactance_pu = field_double(f[3], line_no);
        br.rating_mw = field_double(f[4], line_no);
        if (!(br.reactance_pu > 0.0)) fail("nonpositive reactance", line_no);
        if (!(br.rating_mw > 0.0)) fail("nonpositive rating", line_no);
        for (const auto& other : branches) {
          if (other.id == br.id) fail("duplicate branch id " + std::to_string(br.id), line_no);
        }
        branches.push_back(br);
        branch_lines.push_back(line_no);
        break;
      }
    }
  }

  // Endpoint checks need the full bus list, so they run after the scan.
  for (std::size_t i = 0; i < branches.size(); ++i) {
    auto known = [&](int id) {
      return std::any_of(buses.begin(), buses.end(), [&](const Bus& b) { return b.id == id; });
    };
    if (!known(branches[i].from_bus) || !known(branches[i].to_bus)) {
      fail("branch " + std::to_string(branches[i].id) + " references an unknown bus",
           branch_lines[i]);
    }
  }
  return GridCase(std::move(buses), std::move(branches), base_mva);
}

GridCase load_grid_case(const std::string& path) {
  return parse_grid_case(text::read_file(path));
}

std::string format_grid_case(const GridCase& c) {
  std::ostringstream out;
  out << "#BASE_MVA," << text::format_exact(c.base_mva()) << '\n';
  out << "#BUSES\n";
  for (const auto& b : c.buses()) {
    out << b.id << ',' << text::format_exact(b.p_load_mw) << ',' << text::format_exact(b.p_gen_mw)
        << ',' << (b.is_slack ? 1 : 0) << '\n';
  }
  out << "#BRANCHES\n";
  for (const auto& br : c.branches()) {
    out << br.id << ',' << br.from_bus << ',' << br.to_bus << ','
        << text::format_exact(br.reactance_pu) << ',' << text::format_exact(br.rating_mw) << '\n';
  }
  return out.str();
}

}  // namespace onset::grid

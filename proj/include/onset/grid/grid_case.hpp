#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace onset::grid {

struct Bus {
  int id = 0;
  double p_load_mw = 0.0;
  double p_gen_mw = 0.0;
  bool is_slack = false;
};

struct Branch {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double reactance_pu = 0.0;
  double rating_mw = 0.0;
};

/// Raised for malformed or inconsistent grid-case input. `line()` is the
/// 1-based source line when the error came from the parser, 0 otherwise.
class GridError : public std::runtime_error {
 public:
  explicit GridError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Immutable physical network: buses, branches and the MVA base.
///
/// Invariants (checked on construction): unique bus and branch ids, branch
/// endpoints exist, no self-loops, at most one branch per bus pair,
/// reactance > 0, rating > 0, and exactly one slack bus in every connected
/// component of the topology.
class GridCase {
 public:
  GridCase(std::vector<Bus> buses, std::vector<Branch> branches, double base_mva = 100.0);

  const std::vector<Bus>& buses() const noexcept { return buses_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  double base_mva() const noexcept { return base_mva_; }

  std::size_t bus_count() const noexcept { return buses_.size(); }
  std::size_t branch_count() const noexcept { return branches_.size(); }

  /// Position of a bus/branch id in buses()/branches(); throws GridError if unknown.
  std::size_t bus_index(int bus_id) const;
  std::size_t branch_index(int branch_id) const;
  bool has_branch(int branch_id) const noexcept { return branch_pos_.count(branch_id) != 0; }

  /// Branch ids in ascending order.
  std::vector<int> sorted_branch_ids() const;

  /// Copy with the given branches physically deleted. The slack assignment is
  /// kept as-is, so the result may contain components without a slack bus.
  GridCase without_branches(std::span<const int> removed) const;

  /// Copy with every injection (load and generation) multiplied by `factor`.
  GridCase scaled_injections(double factor) const;

 private:
  struct Unchecked {};
  GridCase(Unchecked, std::vector<Bus> buses, std::vector<Branch> branches, double base_mva);
  void index_and_validate(bool check_slack);

  std::vector<Bus> buses_;
  std::vector<Branch> branches_;
  double base_mva_;
  std::unordered_map<int, std::size_t> bus_pos_;
  std::unordered_map<int, std::size_t> branch_pos_;
};

/// Parses the sectioned CSV grid-case text:
///
///   #BASE_MVA,100
///   #BUSES
///   id,p_load_mw,p_gen_mw,is_slack
///   #BRANCHES
///   id,from,to,reactance_pu,rating_mw
///
/// Any other `#` starts a comment. Errors carry the offending line number.
GridCase parse_grid_case(std::string_view text);

GridCase load_grid_case(const std::string& path);

/// Serializes back to the text format; parse_grid_case(format_grid_case(c)) == c.
std::string format_grid_case(const GridCase& c);

}  // namespace onset::grid

#pragma once

#include <span>
#include <vector>

#include "onset/grid/grid_case.hpp"

namespace onset::grid {

/// One connected component of the surviving topology.
struct Island {
  std::vector<std::size_t> buses;  // indices into GridCase::buses(), ascending
  std::size_t reference_bus = 0;   // index of the angle reference
  double load_mw = 0.0;            // total demand before shedding
  double gen_capacity_mw = 0.0;    // total scheduled generation
  double dispatched_gen_mw = 0.0;  // generation after balancing
  double shed_load_mw = 0.0;
  bool solved = false;
};

/// DC steady state. Vectors are aligned with GridCase::buses() / branches().
struct FlowSolution {
  std::vector<double> angle_rad;
  std::vector<double> injection_mw;    // dispatched generation minus served load
  std::vector<double> branch_flow_mw;  // from->to positive; 0 for removed branches
  std::vector<bool> branch_in_service;
  std::vector<Island> islands;

  double total_shed_mw() const;
};

/// Connected components after removing `removed` branch ids. Components are
/// ordered by their smallest bus index; buses within a component ascend.
std::vector<std::vector<std::size_t>> find_islands(const GridCase& c,
                                                   std::span<const int> removed);

/// Singular-pivot threshold for the reduced susceptance factorization.
inline constexpr double kPivotTolerance = 1e-12;

/// Solves the linearized power flow on every island after removing branches.
///
/// Each island is balanced independently: generation is scaled down
/// proportionally when it exceeds demand, and load is shed proportionally
/// when demand exceeds capacity. Islands without generation (or with a
/// singular reduced matrix) shed all load and are reported unsolved with
/// zero angles and flows. The angle reference is the designated slack if it
/// lies in the island, otherwise the lowest bus id.
FlowSolution solve_dc_power_flow(const GridCase& c, std::span<const int> removed = {});

}  // namespace onset::grid

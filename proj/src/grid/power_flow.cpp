#include "onset/grid/power_flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace onset::grid {
namespace {

std::vector<bool> in_service_mask(const GridCase& c, std::span<const int> removed) {
  std::vector<bool> active(c.branch_count(), true);
  for (int id : removed) active[c.branch_index(id)] = false;
  return active;
}

std::vector<std::vector<std::size_t>> components(const GridCase& c,
                                                 const std::vector<bool>& active) {
  const std::size_t n = c.bus_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t k = 0; k < c.branch_count(); ++k) {
    if (!active[k]) continue;
    const auto& br = c.branches()[k];
    auto a = c.bus_index(br.from_bus);
    auto b = c.bus_index(br.to_bus);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (auto nb : adj[members[head]]) {
        if (comp[nb] < 0) {
          comp[nb] = comp[s];
          members.push_back(nb);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

double FlowSolution::total_shed_mw() const {
  double s = 0.0;
  for (const auto& isl : islands) s += isl.shed_load_mw;
  return s;
}

std::vector<std::vector<std::size_t>> find_islands(const GridCase& c,
                                                   std::span<const int> removed) {
  return components(c, in_service_mask(c, removed));
}

FlowSolution solve_dc_power_flow(const GridCase& c, std::span<const int> removed) {
  const auto& buses = c.buses();
  const auto& branches = c.branches();
  const double base = c.base_mva();

  FlowSolution sol;
  sol.branch_in_service = in_service_mask(c, removed);
  sol.angle_rad.assign(c.bus_count(), 0.0);
  sol.injection_mw.assign(c.bus_count(), 0.0);
  sol.branch_flow_mw.assign(c.branch_count(), 0.0);

  // Branch incidence by bus, restricted to in-service branches.
  std::vector<std::size_t> from_idx(branches.size()), to_idx(branches.size());
  for (std::size_t k = 0; k < branches.size(); ++k) {
    from_idx[k] = c.bus_index(branches[k].from_bus);
    to_idx[k] = c.bus_index(branches[k].to_bus);
  }

  auto comps = components(c, sol.branch_in_service);
  std::vector<std::size_t> island_of(c.bus_count());
  for (std::size_t s = 0; s < comps.size(); ++s) {
    for (auto b : comps[s]) island_of[b] = s;
  }

  std::vector<int> local(c.bus_count(), -1);
  for (std::size_t s = 0; s < comps.size(); ++s) {
    Island isl;
    isl.buses = std::move(comps[s]);
    for (auto b : isl.buses) {
      isl.load_mw += buses[b].p_load_mw;
      isl.gen_capacity_mw += buses[b].p_gen_mw;
    }

    auto slack = std::find_if(isl.buses.begin(), isl.buses.end(),
                              [&](std::size_t b) { return buses[b].is_slack; });
    if (slack != isl.buses.end()) {
      isl.reference_bus = *slack;
    } else {
      isl.reference_bus = *std::min_element(
          isl.buses.begin(), isl.buses.end(),
          [&](std::size_t a, std::size_t b) { return buses[a].id < buses[b].id; });
    }

    if (isl.gen_capacity_mw <= 0.0) {
      isl.shed_load_mw = isl.load_mw;
      isl.solved = false;
      sol.islands.push_back(std::move(isl));
      continue;
    }

    // Balance: scale generation down, or shed load proportionally.
    double gen_scale = 1.0, load_scale = 1.0;
    if (isl.gen_capacity_mw >= isl.load_mw) {
      gen_scale = isl.load_mw / isl.gen_capacity_mw;
    } else {
      load_scale = isl.gen_capacity_mw / isl.load_mw;
      isl.shed_load_mw = isl.load_mw - isl.gen_capacity_mw;
    }
    for (auto b : isl.buses) {
      double g = buses[b].p_gen_mw * gen_scale;
      double l = buses[b].p_load_mw * load_scale;
      sol.injection_mw[b] = g - l;
      isl.dispatched_gen_mw += g;
    }

    // Reduced susceptance system over the non-reference buses of the island.
    const std::size_t n = isl.buses.size() - 1;
    int next = 0;
    for (auto b : isl.buses) local[b] = (b == isl.reference_bus) ? -1 : next++;

    if (n > 0) {
      Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                   static_cast<Eigen::Index>(n));
      Eigen::VectorXd p(static_cast<Eigen::Index>(n));
      for (auto b : isl.buses) {
        if (local[b] >= 0) p(local[b]) = sol.injection_mw[b] / base;
      }
      for (std::size_t k = 0; k < branches.size(); ++k) {
        if (!sol.branch_in_service[k] || island_of[from_idx[k]] != s) continue;
        int i = local[from_idx[k]], j = local[to_idx[k]];
        double y = 1.0 / branches[k].reactance_pu;
        if (i >= 0) bmat(i, i) += y;
        if (j >= 0) bmat(j, j) += y;
        if (i >= 0 && j >= 0) {
          bmat(i, j) -= y;
          bmat(j, i) -= y;
        }
      }

      Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
      double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
      if (!(min_pivot >= kPivotTolerance)) {
        for (auto b : isl.buses) sol.injection_mw[b] = 0.0;
        isl.dispatched_gen_mw = 0.0;
        isl.shed_load_mw = isl.load_mw;
        isl.solved = false;
        sol.islands.push_back(std::move(isl));
        continue;
      }
      Eigen::VectorXd theta = lu.solve(p);
      for (auto b : isl.buses) {
        if (local[b] >= 0) sol.angle_rad[b] = theta(local[b]);
      }
    }
    isl.solved = true;
    sol.islands.push_back(std::move(isl));
  }

  for (std::size_t k = 0; k < branches.size(); ++k) {
    if (!sol.branch_in_service[k]) continue;
    sol.branch_flow_mw[k] =
        (sol.angle_rad[from_idx[k]] - sol.angle_rad[to_idx[k]]) / branches[k].reactance_pu * base;
  }
  return sol;
}

}  // namespace onset::grid

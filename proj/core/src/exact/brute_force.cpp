// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <limits>

#include "coreplace/constraints.hpp"
#include "coreplace/errors.hpp"
#include "coreplace/exact/solver.hpp"
#include "coreplace/flows.hpp"

namespace coreplace::exact {

SolveOutcome brute_force_oracle(const Infrastructure& infra,
                                std::span<const CpProcedure> procedures, const ReplicaPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceTable table(procedures, plan);
  const std::size_t n = table.size();
  const std::size_t servers = infra.server_count();

  std::uint64_t space = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (servers == 0 || space > kOracleMaxAssignments / servers) {
      if (servers == 0) break;
      throw SearchSpaceError("oracle search space " + std::to_string(servers) + "^" +
                             std::to_string(n) + " exceeds the enumeration bound");
    }
    space *= servers;
  }

  SolveOutcome out;
  if (n > 0 && servers == 0) {
    out.status = SolveStatus::Infeasible;
    out.lower_bound = std::numeric_limits<double>::infinity();
    return out;
  }

  DenseAssignment current(n, 0);
  DenseAssignment best;
  double best_psi = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::uint64_t visited = 0; visited < space; ++visited) {
    ++out.nodes;
    const auto report = check_constraints(infra, procedures, plan, table, current);
    if (report.all_pass()) {
      const double psi = objective_psi(link_flows(infra, procedures, plan, table, current));
      if (!found || psi < best_psi - kTolerance) {
        best_psi = psi;
        best = current;
        found = true;
      }
    }
    // odometer, last instance fastest
    for (std::size_t k = n; k-- > 0;) {
      if (++current[k] < servers) break;
      current[k] = 0;
    }
  }

  if (found) {
    out.status = SolveStatus::Optimal;
    out.assignment = to_assignment(table, best);
    out.psi = best_psi;
    out.lower_bound = best_psi;
  } else {
    out.status = SolveStatus::Infeasible;
    out.lower_bound = std::numeric_limits<double>::infinity();
  }
  out.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace coreplace::exact

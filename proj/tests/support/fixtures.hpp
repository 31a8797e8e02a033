// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace::testing {

inline constexpr double kA = 1e-3;   // base time used across fixtures
inline constexpr double kC = 0.5e-3; // remote penalty

inline std::vector<ServerSpec> servers(const std::vector<double>& capacities) {
  std::vector<ServerSpec> out;
  for (std::size_t s = 0; s < capacities.size(); ++s) {
    out.push_back({s, capacities[s], capacities[s]});
  }
  return out;
}

inline Infrastructure mesh(const std::vector<double>& capacities, double link = 1e12) {
  return Infrastructure::full_mesh(servers(capacities), link);
}

/// Chain 0 -> 1 -> ... with the given per-edge base times and unit footprints.
inline CpProcedure chain(ProcedureId id, const std::vector<double>& base_times, double c = kC,
                         std::uint64_t load = 1) {
  std::vector<MsSpec> ms;
  std::vector<Edge> edges;
  for (MsId i = 0; i <= base_times.size(); ++i) ms.push_back({i, 1.0, 1.0, c, load});
  for (MsId i = 0; i < base_times.size(); ++i) edges.push_back({i, i + 1, base_times[i], {}});
  return CpProcedure(id, std::move(ms), std::move(edges));
}

inline ReplicaPlan plan_for(const std::vector<CpProcedure>& procs, std::uint64_t requests) {
  return replica_counts(procs, uniform_workload(procs, requests));
}

/// Remote rate of one pair written out by hand: 1 / (tau * (a + c)).
inline double remote_rate(double a, double c, double tau = 1.0) { return 1.0 / (tau * (a + c)); }

inline bool near(double x, double y, double tol = 1e-9) { return std::fabs(x - y) <= tol; }

}  // namespace coreplace::testing

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "coreplace/harness/supported_load.hpp"
#include "coreplace/mm/mm.hpp"

namespace coreplace::harness {

std::uint64_t descending_scan(std::uint64_t cap,
                              const std::function<bool(std::uint64_t)>& feasible) {
  for (std::uint64_t u = cap; u > 0; --u) {
    if (feasible(u)) return u;
  }
  return 0;
}

bool heuristic_feasible(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                        std::uint64_t load) {
  if (load == 0) return true;
  double largest_cpu = 0.0, largest_mem = 0.0;
  for (const auto& s : infra.servers()) {
    largest_cpu = std::max(largest_cpu, s.cpu_capacity);
    largest_mem = std::max(largest_mem, s.mem_capacity);
  }
  const ReplicaPlan plan = replica_counts(procedures, uniform_workload(procedures, load));
  double cpu = 0.0, mem = 0.0;
  for (const auto& p : procedures) {
    for (const auto& m : p.ms()) {
      if (plan.replicas(p.id(), m.id) == 0) continue;
      if (m.cpu_footprint > largest_cpu + kTolerance || m.mem_footprint > largest_mem + kTolerance) {
        return false;
      }
      cpu += static_cast<double>(plan.replicas(p.id(), m.id)) * m.cpu_footprint;
      mem += static_cast<double>(plan.replicas(p.id(), m.id)) * m.mem_footprint;
    }
  }
  if (cpu > infra.total_capacity(Resource::Cpu) + kTolerance ||
      mem > infra.total_capacity(Resource::Mem) + kTolerance) {
    return false;
  }
  return mm::mm_map_all(infra, procedures, plan).status == mm::MmStatus::Mapped;
}

SupportedLoad supported_load(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                             std::uint64_t cap, bool record_feasibility) {
  SupportedLoad out;
  if (record_feasibility) {
    out.feasible.assign(cap + 1, false);
    out.feasible[0] = true;
    for (std::uint64_t u = 1; u <= cap; ++u) {
      out.feasible[u] = heuristic_feasible(infra, procedures, u);
      if (out.feasible[u]) out.joint = u;
    }
  } else {
    out.joint = descending_scan(
        cap, [&](std::uint64_t u) { return heuristic_feasible(infra, procedures, u); });
  }
  for (const auto& p : procedures) {
    std::span<const CpProcedure> alone(&p, 1);
    out.per_procedure.emplace_back(
        p.id(), descending_scan(cap, [&](std::uint64_t u) {
          return heuristic_feasible(infra, alone, u);
        }));
  }
  return out;
}

}  // namespace coreplace::harness

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace::harness {

struct SupportedLoad {
  std::uint64_t joint = 0;  // every procedure at the same load
  std::vector<std::pair<ProcedureId, std::uint64_t>> per_procedure;  // each procedure alone
  /// feasible[U] for U in [0, cap] of the joint run, when requested.
  std::vector<bool> feasible;
};

/// Largest U in [0, cap] with feasible(U), scanning down from cap.
/// U = 0 is always feasible.
std::uint64_t descending_scan(std::uint64_t cap, const std::function<bool(std::uint64_t)>& feasible);

/// True when the heuristic maps every procedure at uniform load U.
/// Loads whose total demand exceeds the farm, or that need a node larger
/// than every server, are rejected without running it.
bool heuristic_feasible(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                        std::uint64_t load);

/// Largest uniform load in [0, cap] the heuristic can place, for all
/// procedures together and for each one alone.
SupportedLoad supported_load(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                             std::uint64_t cap, bool record_feasibility = false);

}  // namespace coreplace::harness

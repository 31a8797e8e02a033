// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "coreplace/model.hpp"
#include "coreplace/scenario/fivegc.hpp"

namespace coreplace::scenario {

struct MsBased {};

struct NfBased {
  NfGrouping grouping;
  std::uint64_t threads_per_instance = 1;
};

struct ProcedureBased {
  std::uint64_t threads_per_instance = 1;
};

using ArchitectureModel = std::variant<MsBased, NfBased, ProcedureBased>;

std::string architecture_name(const ArchitectureModel& model);

/// Rewrites procedures under an architecture; ids are preserved.
///
/// NF-based: each group of a procedure becomes one node, in group order,
/// with footprints equal to the member sums times the thread count and max
/// load equal to the thread count. Member edges crossing from group g to
/// group h merge into one edge whose colocated and remote rates are the sums
/// of the member rates, times the thread count.
/// Procedure-based: one node per procedure, with summed and thread-scaled
/// footprints and no edges.
/// Throws ConfigError when a grouping does not partition a procedure's MSs
/// or a thread count is zero.
std::vector<CpProcedure> aggregate(const std::vector<CpProcedure>& procedures,
                                   const ArchitectureModel& model);

}  // namespace coreplace::scenario

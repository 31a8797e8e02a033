// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

#include "coreplace/model.hpp"

namespace coreplace::scenario {

struct RandomGraphConfig {
  std::size_t ms_count = 6;
  double edge_probability = 0.75;  // per ordered pair
  double base_time = 1e-3;         // seconds
  double remote_penalty = 0.5e-3;  // seconds
  double cpu_footprint = 1.0;
  double mem_footprint = 1.0;
  std::uint64_t max_load = 1;
  std::uint64_t seed = 0;
  ProcedureId procedure_id = 0;
};

/// Throws ConfigError for a probability outside [0, 1], nonpositive base
/// time, negative penalty or footprint, zero max load or zero MS count.
void validate(const RandomGraphConfig& config);

/// Every ordered pair (i, j), i != j, gets an edge independently with the
/// configured probability. Pairs are visited row by row.
CpProcedure gen_random_procedure(const RandomGraphConfig& config);

}  // namespace coreplace::scenario

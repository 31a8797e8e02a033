// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <string>

#include "coreplace/errors.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/random_graph.hpp"

namespace coreplace::scenario {

void validate(const RandomGraphConfig& c) {
  if (c.ms_count == 0) throw ConfigError("ms_count must be positive");
  if (!(c.edge_probability >= 0.0 && c.edge_probability <= 1.0)) {
    throw ConfigError("edge probability must lie in [0, 1]");
  }
  if (!(c.base_time > 0.0) || !std::isfinite(c.base_time)) {
    throw ConfigError("base time must be positive");
  }
  if (!(c.remote_penalty >= 0.0) || !(c.cpu_footprint >= 0.0) || !(c.mem_footprint >= 0.0)) {
    throw ConfigError("penalty and footprints must be nonnegative");
  }
  if (c.max_load == 0) throw ConfigError("max load must be positive");
}

CpProcedure gen_random_procedure(const RandomGraphConfig& c) {
  validate(c);
  std::vector<MsSpec> ms;
  ms.reserve(c.ms_count);
  for (MsId i = 0; i < c.ms_count; ++i) {
    ms.push_back({i, c.cpu_footprint, c.mem_footprint, c.remote_penalty, c.max_load});
  }
  Rng rng(c.seed);
  std::vector<Edge> edges;
  for (MsId i = 0; i < c.ms_count; ++i) {
    for (MsId j = 0; j < c.ms_count; ++j) {
      if (i == j) continue;
      if (rng.bernoulli(c.edge_probability)) edges.push_back({i, j, c.base_time, std::nullopt});
    }
  }
  return CpProcedure(c.procedure_id, std::move(ms), std::move(edges),
                     "random-" + std::to_string(c.seed));
}

}  // namespace coreplace::scenario

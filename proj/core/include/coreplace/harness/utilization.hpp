// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coreplace/harness/config.hpp"
#include "coreplace/model.hpp"

namespace coreplace::harness {

/// Footprint of every instance at uniform `load` over total farm capacity, in
/// percent, per resource.
std::pair<double, double> demand_utilization(const Infrastructure& infra,
                                             std::span<const CpProcedure> procedures,
                                             std::uint64_t load);

struct UtilizationRecord {
  std::uint64_t load = 0;
  std::string architecture;
  double cpu_pct = 0.0;
  double mem_pct = 0.0;
  std::size_t instances = 0;
  std::optional<bool> placed;  // heuristic verdict when checked
};

struct UtilizationResult {
  std::uint64_t u_max = 0;
  double total_cpu = 0.0;
  double total_mem = 0.0;
  std::vector<UtilizationRecord> records;  // load, then architecture
};

UtilizationResult run_utilization(const UtilizationConfig& config);

std::vector<std::string> utilization_columns();

std::vector<std::filesystem::path> write_utilization(const UtilizationResult& result,
                                                     const std::filesystem::path& out_dir);

}  // namespace coreplace::harness

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coreplace/harness/config.hpp"
#include "coreplace/harness/supported_load.hpp"
#include "coreplace/scenario/aggregate.hpp"

namespace coreplace::harness {

struct ArchCompareRecord {
  std::size_t servers = 0;
  std::string architecture;
  std::uint64_t load = 0;
  SupportedLoad supported;
  bool mapped = false;              // heuristic succeeded at `load`
  std::optional<double> psi_mm;     // at `load`
  std::optional<double> psi_at_supported;
  double min_server_cpu = 0.0;
  double max_server_cpu = 0.0;
  double max_node_cpu = 0.0;        // largest single-instance footprint
};

struct ArchCompareResult {
  std::vector<ArchCompareRecord> records;  // servers, architecture, load
};

/// The three architectures compared, in output order.
std::vector<scenario::ArchitectureModel> arch_compare_models(const ArchCompareConfig& config);

ArchCompareResult run_arch_compare(const ArchCompareConfig& config);

std::vector<std::string> arch_compare_columns(std::size_t procedure_count);

/// Writes arch_compare.csv and, when recorded, arch_compare_feasibility.csv.
std::vector<std::filesystem::path> write_arch_compare(const ArchCompareResult& result,
                                                      const std::filesystem::path& out_dir);

}  // namespace coreplace::harness

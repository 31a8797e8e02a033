// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coreplace/exact/solver.hpp"
#include "coreplace/harness/config.hpp"
#include "coreplace/scenario/farm.hpp"

namespace coreplace::harness {

struct CostGapRecord {
  scenario::Homogeneity homogeneity = scenario::Homogeneity::Homogeneous;
  std::size_t ms_count = 0;
  double server_ratio = 0.0;
  double edge_probability = 0.0;
  std::uint64_t seed = 0;
  std::size_t servers = 0;
  std::size_t edges = 0;
  bool mm_mapped = false;
  bool mm_feasible = false;  // constraint check of the heuristic output
  std::optional<double> psi_mm;
  exact::SolveStatus exact_status = exact::SolveStatus::Infeasible;
  std::optional<double> psi_exact;      // proven optimum only
  std::optional<double> psi_incumbent;  // best found when the time limit hit
  std::uint64_t nodes = 0;
  double t_mm_s = 0.0;
  double t_exact_s = 0.0;
  std::size_t vars = 0;
  std::size_t cons = 0;

  /// psi_mm - psi_exact when both exist.
  std::optional<double> gap() const;
};

struct CostGapCell {
  scenario::Homogeneity homogeneity = scenario::Homogeneity::Homogeneous;
  std::size_t ms_count = 0;
  double server_ratio = 0.0;
  double edge_probability = 0.0;
  std::size_t runs = 0;
  std::size_t mm_mapped = 0;
  std::size_t exact_optimal = 0;
  std::size_t exact_infeasible = 0;
  std::size_t exact_timeouts = 0;
  std::size_t compared = 0;  // runs with both a heuristic result and an optimum
  std::optional<double> mean_gap;
  std::optional<double> min_gap;
  std::optional<double> max_gap;
  double mean_vars = 0.0;
  double mean_cons = 0.0;
  double mean_t_mm_s = 0.0;
  double mean_t_exact_s = 0.0;
};

struct CostGapResult {
  std::vector<CostGapRecord> records;  // cell order, then seed
  std::vector<CostGapCell> cells;
};

/// Seed of run `iteration` in a cell.
std::uint64_t cost_gap_seed(const CostGapConfig& config, scenario::Homogeneity h,
                            std::size_t ms_count, double ratio, double probability,
                            std::size_t iteration);

/// Generates one random scenario and solves it both ways.
CostGapRecord run_cost_gap_instance(const CostGapConfig& config, scenario::Homogeneity h,
                                    std::size_t ms_count, double ratio, double probability,
                                    std::uint64_t seed);

CostGapResult run_cost_gap(const CostGapConfig& config);

/// Aggregates records of one cell; timeouts and failed runs stay out of the gap.
CostGapCell summarize_cell(std::span<const CostGapRecord> records);

/// Writes cost_gap_<homogeneity>.csv per homogeneity mode plus
/// cost_gap_summary.csv. Returns the written paths.
std::vector<std::filesystem::path> write_cost_gap(const CostGapResult& result,
                                                  const std::filesystem::path& out_dir,
                                                  bool timings);

/// Per-run and summary column names.
std::vector<std::string> cost_gap_columns();
std::vector<std::string> cost_gap_summary_columns();

}  // namespace coreplace::harness

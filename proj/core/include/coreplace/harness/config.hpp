// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coreplace/scenario/farm.hpp"
#include "coreplace/scenario/fivegc.hpp"

namespace coreplace::harness {

enum class ExperimentKind { CostGap, ArchCompare, Utilization };

const char* to_string(ExperimentKind k);
/// "cost-gap", "arch-compare" or "utilization"; throws ConfigError otherwise.
ExperimentKind parse_experiment_kind(std::string_view text);

inline constexpr std::size_t kDefaultIterations = 500;

/// Settings shared by every experiment. Overridable from the command line.
struct RunOptions {
  std::uint64_t seed = 1;
  std::size_t iterations = kDefaultIterations;
  double time_limit_s = 300.0;
  bool timings = true;      // false writes empty timing cells for byte-stable output
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct CostGapConfig {
  RunOptions run;
  std::vector<std::size_t> ms_counts{6, 7, 8, 9, 10};
  std::vector<double> server_ratios{0.5, 0.75};
  std::vector<double> edge_probabilities{0.25, 0.75};
  std::vector<scenario::Homogeneity> homogeneity{scenario::Homogeneity::Homogeneous,
                                                 scenario::Homogeneity::NonHomogeneous};
  std::size_t max_ms = 10;  // exact-solver ceiling
  std::uint64_t requests = 1;
  double base_time = 1e-3;
  double remote_penalty = 0.5e-3;
  double cpu_footprint = 1.0;
  double mem_footprint = 1.0;
  std::uint64_t max_load = 1;
};

struct ArchCompareConfig {
  RunOptions run;
  std::vector<std::size_t> server_counts{25,  50,  100, 200, 300, 400,  500,  600,
                                         700, 800, 1000, 1200, 1400, 1600, 1800, 2000};
  std::vector<std::uint64_t> loads{50, 100, 250, 500};
  /// Each farm is sized so the MS-based workload reaches u_max equal to its
  /// requested load; when set, one farm sized for this load serves every load.
  std::optional<std::uint64_t> sizing_load;
  scenario::NfGrouping grouping = scenario::default_nf_grouping();
  std::uint64_t nf_threads = 1;
  std::uint64_t procedure_threads = 1;
  scenario::Homogeneity homogeneity = scenario::Homogeneity::NonHomogeneous;
  bool record_feasibility = false;
};

struct UtilizationConfig {
  RunOptions run;
  std::size_t server_count = 5;
  std::uint64_t u_max_target = 500;
  std::uint64_t load_step = 1;
  std::uint64_t nf_threads = 50;
  std::uint64_t procedure_threads = 100;
  scenario::NfGrouping grouping = scenario::default_nf_grouping();
  scenario::Homogeneity homogeneity = scenario::Homogeneity::NonHomogeneous;
  bool check_placement = true;  // also run the heuristic at every load
};

/// Validates ranges; throws ConfigError.
void validate(const RunOptions& run);
void validate(const CostGapConfig& config);
void validate(const ArchCompareConfig& config);
void validate(const UtilizationConfig& config);

/// JSON configs use the field names above; every field is optional.
/// A "grouping_file" entry loads an NF grouping relative to `base_dir`.
/// Throws ConfigError on unknown keys or bad values.
CostGapConfig parse_cost_gap_config(std::string_view json_text);
ArchCompareConfig parse_arch_compare_config(std::string_view json_text,
                                            const std::filesystem::path& base_dir = {});
UtilizationConfig parse_utilization_config(std::string_view json_text,
                                           const std::filesystem::path& base_dir = {});

/// Directory named by COREPLACE_OUT_DIR, else "results".
std::filesystem::path default_output_dir();

}  // namespace coreplace::harness

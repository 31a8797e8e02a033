// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coreplace/constraints.hpp"
#include "coreplace/model.hpp"

namespace coreplace {

/// A complete problem instance as stored in scenario files.
struct Scenario {
  Infrastructure infra;
  std::vector<CpProcedure> procedures;
  Workload workload;
};

/// Parses the scenario JSON format:
///
///   {"infrastructure": {"servers": [{"id","cpu","mem"}],
///                       "links": [{"a","b","capacity"[, "capacity_ba"]}],
///                       "full_mesh": bool, "mesh_capacity": number},
///    "procedures": [{"id"[, "name"], "ms": [{"id","cpu","mem","load","remote_penalty_s"}],
///                    "edges": [{"src","dst","base_time_s"[, "remote_penalty_s"]}]}],
///    "workload": [{"procedure","requests"}],
///    "units": "normalized" | "absolute"}
///
/// A link entry sets both directions; "capacity_ba" overrides b->a.
/// With "units": "absolute" capacities and footprints are divided by the
/// largest server capacity of each resource on load.
/// Throws ConfigError on malformed input.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

/// Assignment report: {"assignment": [{"procedure","ms","replica","server"}],
/// "psi", "link_flows", "per_server_utilization", "constraints"}.
std::string assignment_report_json(const Scenario& scenario, const ReplicaPlan& plan,
                                   const Assignment& assignment);

/// Reads the "assignment" array of a report (or a bare array).
Assignment parse_assignment(std::string_view json_text);
Assignment load_assignment(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace coreplace

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "coreplace/errors.hpp"
#include "coreplace/harness/config.hpp"

namespace coreplace::harness {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::CostGap:
      return "cost-gap";
    case ExperimentKind::ArchCompare:
      return "arch-compare";
    case ExperimentKind::Utilization:
      return "utilization";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "cost-gap") return ExperimentKind::CostGap;
  if (text == "arch-compare") return ExperimentKind::ArchCompare;
  if (text == "utilization") return ExperimentKind::Utilization;
  throw ConfigError("unknown experiment kind '" + std::string(text) + "'");
}

void validate(const RunOptions& run) {
  if (run.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (!(run.time_limit_s > 0.0) || !std::isfinite(run.time_limit_s)) {
    throw ConfigError("time limit must be positive");
  }
}

void validate(const CostGapConfig& c) {
  validate(c.run);
  if (c.ms_counts.empty() || c.server_ratios.empty() || c.edge_probabilities.empty() ||
      c.homogeneity.empty()) {
    throw ConfigError("cost-gap sweep lists must be nonempty");
  }
  for (auto m : c.ms_counts) {
    if (m == 0) throw ConfigError("ms count must be positive");
    if (m > c.max_ms) {
      throw ConfigError("ms count " + std::to_string(m) + " exceeds the exact-solver ceiling " +
                        std::to_string(c.max_ms));
    }
  }
  for (double s : c.server_ratios) {
    if (!(s > 0.0)) throw ConfigError("server ratio must be positive");
  }
  for (double p : c.edge_probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0, 1]");
  }
  if (!(c.base_time > 0.0) || !(c.remote_penalty >= 0.0)) {
    throw ConfigError("base time must be positive and penalty nonnegative");
  }
  if (c.max_load == 0) throw ConfigError("max load must be positive");
}

void validate(const ArchCompareConfig& c) {
  validate(c.run);
  if (c.server_counts.empty() || c.loads.empty()) {
    throw ConfigError("arch-compare needs server counts and loads");
  }
  if (std::find(c.server_counts.begin(), c.server_counts.end(), 0u) != c.server_counts.end()) {
    throw ConfigError("server counts must be positive");
  }
  if (c.nf_threads == 0 || c.procedure_threads == 0) {
    throw ConfigError("thread counts must be positive");
  }
}

void validate(const UtilizationConfig& c) {
  validate(c.run);
  if (c.server_count == 0) throw ConfigError("server count must be positive");
  if (c.load_step == 0) throw ConfigError("load step must be positive");
  if (c.nf_threads == 0 || c.procedure_threads == 0) {
    throw ConfigError("thread counts must be positive");
  }
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!keys.contains(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_run(const json& j, RunOptions& run) {
  read(j, "seed", run.seed);
  read(j, "iterations", run.iterations);
  read(j, "time_limit_s", run.time_limit_s);
  read(j, "timings", run.timings);
  read(j, "threads", run.threads);
}

scenario::Homogeneity read_homogeneity(const json& v) {
  return scenario::parse_homogeneity(v.get<std::string>());
}

void read_grouping(const json& j, const std::filesystem::path& base_dir,
                   scenario::NfGrouping& grouping) {
  if (j.contains("grouping_file")) {
    std::filesystem::path p = j.at("grouping_file").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    grouping = scenario::load_nf_grouping(p);
  }
  if (j.contains("grouping")) grouping = scenario::parse_nf_grouping(j.at("grouping").dump());
}

template <class F>
auto guarded(std::string_view text, F&& body) {
  try {
    return body(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

}  // namespace

CostGapConfig parse_cost_gap_config(std::string_view text) {
  return guarded(text, [](const json& j) {
    reject_unknown(j, {"kind", "seed", "iterations", "time_limit_s", "timings", "threads",
                       "ms_counts", "server_ratios", "edge_probabilities", "homogeneity",
                       "max_ms", "requests", "base_time_s", "remote_penalty_s", "cpu", "mem",
                       "load"});
    CostGapConfig c;
    read_run(j, c.run);
    read(j, "ms_counts", c.ms_counts);
    read(j, "server_ratios", c.server_ratios);
    read(j, "edge_probabilities", c.edge_probabilities);
    if (j.contains("homogeneity")) {
      c.homogeneity.clear();
      for (const auto& v : j.at("homogeneity")) c.homogeneity.push_back(read_homogeneity(v));
    }
    read(j, "max_ms", c.max_ms);
    read(j, "requests", c.requests);
    read(j, "base_time_s", c.base_time);
    read(j, "remote_penalty_s", c.remote_penalty);
    read(j, "cpu", c.cpu_footprint);
    read(j, "mem", c.mem_footprint);
    read(j, "load", c.max_load);
    validate(c);
    return c;
  });
}

ArchCompareConfig parse_arch_compare_config(std::string_view text,
                                            const std::filesystem::path& base_dir) {
  return guarded(text, [&](const json& j) {
    reject_unknown(j, {"kind", "seed", "iterations", "time_limit_s", "timings", "threads",
                       "server_counts", "loads", "sizing_load", "grouping", "grouping_file",
                       "nf_threads", "procedure_threads", "homogeneity", "record_feasibility"});
    ArchCompareConfig c;
    read_run(j, c.run);
    read(j, "server_counts", c.server_counts);
    read(j, "loads", c.loads);
    if (j.contains("sizing_load")) c.sizing_load = j.at("sizing_load").get<std::uint64_t>();
    read_grouping(j, base_dir, c.grouping);
    read(j, "nf_threads", c.nf_threads);
    read(j, "procedure_threads", c.procedure_threads);
    if (j.contains("homogeneity")) c.homogeneity = read_homogeneity(j.at("homogeneity"));
    read(j, "record_feasibility", c.record_feasibility);
    validate(c);
    return c;
  });
}

UtilizationConfig parse_utilization_config(std::string_view text,
                                           const std::filesystem::path& base_dir) {
  return guarded(text, [&](const json& j) {
    reject_unknown(j, {"kind", "seed", "iterations", "time_limit_s", "timings", "threads",
                       "server_count", "u_max_target", "load_step", "nf_threads",
                       "procedure_threads", "grouping", "grouping_file", "homogeneity",
                       "check_placement"});
    UtilizationConfig c;
    read_run(j, c.run);
    read(j, "server_count", c.server_count);
    read(j, "u_max_target", c.u_max_target);
    read(j, "load_step", c.load_step);
    read(j, "nf_threads", c.nf_threads);
    read(j, "procedure_threads", c.procedure_threads);
    read_grouping(j, base_dir, c.grouping);
    if (j.contains("homogeneity")) c.homogeneity = read_homogeneity(j.at("homogeneity"));
    read(j, "check_placement", c.check_placement);
    validate(c);
    return c;
  });
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("COREPLACE_OUT_DIR"); env && *env) return env;
  return "results";
}

}  // namespace coreplace::harness

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <string>

#include "coreplace/errors.hpp"
#include "coreplace/scenario/aggregate.hpp"

namespace coreplace::scenario {

std::string architecture_name(const ArchitectureModel& model) {
  if (std::holds_alternative<MsBased>(model)) return "ms";
  if (std::holds_alternative<NfBased>(model)) return "nf";
  return "procedure";
}

namespace {

CpProcedure aggregate_nf(const CpProcedure& p, const NfGrouping& grouping, std::uint64_t threads) {
  const double h = static_cast<double>(threads);
  std::vector<const NfGroup*> groups;
  for (const auto& g : grouping) {
    if (g.procedure == p.id()) groups.push_back(&g);
  }
  if (groups.empty()) {
    throw ConfigError("NF grouping has no groups for procedure " + std::to_string(p.id()));
  }
  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> group_of(p.size(), kNone);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (MsId i : groups[g]->ms_ids) {
      if (i >= p.size()) {
        throw ConfigError("group '" + groups[g]->name + "' names unknown MS " + std::to_string(i));
      }
      if (group_of[i] != kNone) {
        throw ConfigError("MS " + std::to_string(i) + " of procedure " + std::to_string(p.id()) +
                          " belongs to two groups");
      }
      group_of[i] = g;
    }
  }
  for (MsId i = 0; i < p.size(); ++i) {
    if (group_of[i] == kNone) {
      throw ConfigError("MS " + std::to_string(i) + " of procedure " + std::to_string(p.id()) +
                        " is not in any group");
    }
  }

  std::vector<MsSpec> nodes(groups.size());
  std::vector<double> penalty_sum(groups.size(), 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    nodes[g].id = g;
    nodes[g].max_load = threads;
  }
  for (const auto& m : p.ms()) {
    auto& node = nodes[group_of[m.id]];
    node.cpu_footprint += h * m.cpu_footprint;
    node.mem_footprint += h * m.mem_footprint;
    penalty_sum[group_of[m.id]] += m.remote_penalty;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    nodes[g].remote_penalty = penalty_sum[g] / static_cast<double>(groups[g]->ms_ids.size());
  }

  // Summed colocated and remote rates per crossing group pair.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> rates;
  for (const auto& e : p.edges()) {
    const std::size_t g = group_of[e.src], k = group_of[e.dst];
    if (g == k) continue;
    auto& r = rates[{g, k}];
    r.first += 1.0 / p.output_time(e, true);
    r.second += 1.0 / p.output_time(e, false);
  }
  std::vector<Edge> edges;
  for (const auto& [pair, r] : rates) {
    const double base = 1.0 / (h * r.first);
    const double remote = 1.0 / (h * r.second);
    edges.push_back({pair.first, pair.second, base, std::max(0.0, remote - base)});
  }
  return CpProcedure(p.id(), std::move(nodes), std::move(edges), p.name());
}

CpProcedure aggregate_procedure(const CpProcedure& p, std::uint64_t threads) {
  const double h = static_cast<double>(threads);
  MsSpec node{0, 0.0, 0.0, 0.0, threads};
  for (const auto& m : p.ms()) {
    node.cpu_footprint += h * m.cpu_footprint;
    node.mem_footprint += h * m.mem_footprint;
  }
  return CpProcedure(p.id(), {node}, {}, p.name());
}

}  // namespace

std::vector<CpProcedure> aggregate(const std::vector<CpProcedure>& procedures,
                                   const ArchitectureModel& model) {
  std::vector<CpProcedure> out;
  if (std::holds_alternative<MsBased>(model)) return procedures;
  if (const auto* nf = std::get_if<NfBased>(&model)) {
    if (nf->threads_per_instance == 0) throw ConfigError("threads per instance must be positive");
    for (const auto& p : procedures) out.push_back(aggregate_nf(p, nf->grouping, nf->threads_per_instance));
    return out;
  }
  const auto& pb = std::get<ProcedureBased>(model);
  if (pb.threads_per_instance == 0) throw ConfigError("threads per instance must be positive");
  for (const auto& p : procedures) out.push_back(aggregate_procedure(p, pb.threads_per_instance));
  return out;
}

}  // namespace coreplace::scenario

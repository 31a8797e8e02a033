// SPDX-License-Identifier: Apache-2.0
#include "coreplace/flows.hpp"

#include <algorithm>
#include <string>

#include "coreplace/errors.hpp"

namespace coreplace {

double pair_flow(const CpProcedure& procedure, const ReplicaPlan& plan, MsId src, MsId dst,
                 bool colocated) {
  const Edge* e = procedure.find_edge(src, dst);
  if (e == nullptr) {
    throw DomainError("procedure " + std::to_string(procedure.id()) + " has no edge " +
                      std::to_string(src) + "->" + std::to_string(dst));
  }
  return pair_flow(procedure, *e, plan.replicas(procedure.id(), dst), colocated);
}

double pair_flow(const CpProcedure& procedure, const Edge& edge, std::size_t dst_replicas,
                 bool colocated) {
  if (dst_replicas == 0) throw DomainError("destination MS has no instances");
  return 1.0 / (static_cast<double>(dst_replicas) * procedure.output_time(edge, colocated));
}

LinkFlows& LinkFlows::operator+=(const LinkFlows& other) {
  if (other.n_ != n_) throw DomainError("link flow matrices differ in size");
  for (std::size_t k = 0; k < xi_.size(); ++k) xi_[k] += other.xi_[k];
  return *this;
}

void add_procedure_flows(const CpProcedure& procedure, std::span<const std::size_t> replicas,
                         const MsServerCounts& counts, LinkFlows& flows) {
  for (const auto& e : procedure.edges()) {
    if (replicas[e.dst] == 0 || replicas[e.src] == 0) continue;
    const double local = pair_flow(procedure, e, replicas[e.dst], true);
    const double remote = pair_flow(procedure, e, replicas[e.dst], false);
    for (const auto& [a, na] : counts[e.src]) {
      for (const auto& [b, nb] : counts[e.dst]) {
        flows.at(a, b) += static_cast<double>(na * nb) * (a == b ? local : remote);
      }
    }
  }
}

MsServerCounts server_counts(const InstanceTable& table, std::size_t position,
                             const CpProcedure& procedure, std::span<const ServerId> dense) {
  MsServerCounts counts(procedure.size());
  for (MsId i = 0; i < procedure.size(); ++i) {
    auto& list = counts[i];
    for (std::size_t n = table.first(position, i); n < table.first(position, i + 1); ++n) {
      const ServerId s = dense[n];
      auto it = std::lower_bound(list.begin(), list.end(), s,
                                 [](const auto& entry, ServerId v) { return entry.first < v; });
      if (it != list.end() && it->first == s) {
        ++it->second;
      } else {
        list.insert(it, {s, 1});
      }
    }
  }
  return counts;
}

LinkFlows link_flows(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const Assignment& assignment) {
  const InstanceTable table(procedures, plan);
  return link_flows(infra, procedures, plan, table, to_dense(table, assignment));
}

LinkFlows link_flows(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const InstanceTable& table,
                     std::span<const ServerId> dense) {
  const std::size_t n = infra.server_count();
  for (ServerId s : dense) {
    if (s >= n) throw DomainError("instance mapped to unknown server " + std::to_string(s));
  }
  LinkFlows flows(n);
  for (std::size_t pos = 0; pos < procedures.size(); ++pos) {
    const auto& p = procedures[pos];
    add_procedure_flows(p, plan.of(p.id()), server_counts(table, pos, p, dense), flows);
  }
  return flows;
}

double objective_psi(const LinkFlows& flows) {
  double psi = 0.0;
  for (ServerId a = 0; a < flows.server_count(); ++a) {
    for (ServerId b = 0; b < flows.server_count(); ++b) {
      if (a != b) psi += flows(a, b);
    }
  }
  return psi;
}

std::vector<std::pair<double, double>> server_load(const Infrastructure& infra,
                                                   std::span<const CpProcedure> procedures,
                                                   const Assignment& assignment) {
  std::vector<std::pair<double, double>> load(infra.server_count(), {0.0, 0.0});
  for (const auto& [key, s] : assignment) {
    if (s >= load.size()) throw DomainError("instance mapped to unknown server " + std::to_string(s));
    const auto& m = find_procedure(procedures, key.procedure).ms(key.ms);
    load[s].first += m.cpu_footprint;
    load[s].second += m.mem_footprint;
  }
  return load;
}

}  // namespace coreplace

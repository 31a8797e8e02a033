// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace {

/// Flow of one instance of `src` toward one instance of `dst` in PDUs/second:
/// 1/(tau_dst * a) when colocated, 1/(tau_dst * (a + c)) otherwise.
/// Throws DomainError for an absent edge or tau_dst == 0.
double pair_flow(const CpProcedure& procedure, const ReplicaPlan& plan, MsId src, MsId dst,
                 bool colocated);

/// Same, for a known edge and destination replica count.
double pair_flow(const CpProcedure& procedure, const Edge& edge, std::size_t dst_replicas,
                 bool colocated);

/// Directed flow matrix xi over ordered server pairs, diagonal included.
class LinkFlows {
 public:
  explicit LinkFlows(std::size_t servers = 0) : n_(servers), xi_(servers * servers, 0.0) {}

  std::size_t server_count() const { return n_; }
  double operator()(ServerId a, ServerId b) const { return xi_[a * n_ + b]; }
  double& at(ServerId a, ServerId b) { return xi_[a * n_ + b]; }

  LinkFlows& operator+=(const LinkFlows& other);

 private:
  std::size_t n_;
  std::vector<double> xi_;
};

/// Sparse (server, instance count) lists, one per MS of a procedure.
using MsServerCounts = std::vector<std::vector<std::pair<ServerId, std::size_t>>>;

/// Accumulates the flows of one procedure's placed instances into `flows`.
/// `replicas` are the final per-MS instance counts used for the load split;
/// `counts` may describe a partial placement.
void add_procedure_flows(const CpProcedure& procedure, std::span<const std::size_t> replicas,
                         const MsServerCounts& counts, LinkFlows& flows);

/// Per-MS server counts of a dense assignment, for the procedure at `position`.
MsServerCounts server_counts(const InstanceTable& table, std::size_t position,
                             const CpProcedure& procedure, std::span<const ServerId> dense);

LinkFlows link_flows(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const Assignment& assignment);

LinkFlows link_flows(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const InstanceTable& table,
                     std::span<const ServerId> dense);

/// Psi: total off-diagonal flow.
double objective_psi(const LinkFlows& flows);

/// Footprint placed on each server, indexed [server][resource].
std::vector<std::pair<double, double>> server_load(const Infrastructure& infra,
                                                   std::span<const CpProcedure> procedures,
                                                   const Assignment& assignment);

}  // namespace coreplace

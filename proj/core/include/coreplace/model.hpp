// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coreplace {

using ServerId = std::size_t;
using MsId = std::size_t;
using ProcedureId = std::size_t;

/// Absolute tolerance for every capacity and flow comparison.
inline constexpr double kTolerance = 1e-9;

enum class Resource { Cpu, Mem };

inline constexpr Resource kResources[] = {Resource::Cpu, Resource::Mem};

const char* to_string(Resource r);

struct ServerSpec {
  ServerId id = 0;
  double cpu_capacity = 0.0;  // normalized units
  double mem_capacity = 0.0;

  double capacity(Resource r) const { return r == Resource::Cpu ? cpu_capacity : mem_capacity; }
};

/// Capacity of a directed server-to-server link in PDUs/second.
/// Self-links carry the Unbounded alternative.
class LinkCapacity {
 public:
  struct Unbounded {
    bool operator==(const Unbounded&) const = default;
  };

  LinkCapacity() = default;
  static LinkCapacity unbounded() { return LinkCapacity(Unbounded{}); }
  static LinkCapacity finite(double pdus_per_second);

  bool is_unbounded() const { return std::holds_alternative<Unbounded>(value_); }
  /// Finite value; throws DomainError for an unbounded link.
  double value() const;
  /// True when `flow` fits, always true for unbounded links.
  bool admits(double flow, double tolerance = kTolerance) const;

  bool operator==(const LinkCapacity&) const = default;

 private:
  explicit LinkCapacity(std::variant<Unbounded, double> v) : value_(v) {}
  std::variant<Unbounded, double> value_{0.0};
};

/// Servers, their adjacency and the directed link capacity matrix.
///
/// Adjacency is symmetric with a true diagonal. Non-adjacent pairs have zero
/// capacity and the diagonal is always unbounded; the constructor rejects
/// input that breaks either rule.
class Infrastructure {
 public:
  Infrastructure(std::vector<ServerSpec> servers,
                 const std::vector<std::vector<bool>>& adjacency,
                 const std::vector<std::vector<double>>& link_capacity);

  /// Every pair adjacent, every off-diagonal link with the same capacity.
  static Infrastructure full_mesh(std::vector<ServerSpec> servers, double link_capacity);
  /// Every pair adjacent; link a->b carries outgoing_capacity[a].
  static Infrastructure full_mesh(std::vector<ServerSpec> servers,
                                  std::span<const double> outgoing_capacity);

  std::size_t server_count() const { return servers_.size(); }
  const std::vector<ServerSpec>& servers() const { return servers_; }
  const ServerSpec& server(ServerId s) const { return servers_.at(s); }
  bool adjacent(ServerId a, ServerId b) const { return adjacency_[a * servers_.size() + b] != 0; }
  const LinkCapacity& link_capacity(ServerId a, ServerId b) const {
    return capacity_[a * servers_.size() + b];
  }
  double total_capacity(Resource r) const;

 private:
  std::vector<ServerSpec> servers_;
  std::vector<char> adjacency_;
  std::vector<LinkCapacity> capacity_;
};

struct MsSpec {
  MsId id = 0;
  double cpu_footprint = 0.0;
  double mem_footprint = 0.0;
  double remote_penalty = 0.0;  // seconds added per output sent off-server
  std::uint64_t max_load = 1;   // concurrent requests one instance serves

  double footprint(Resource r) const { return r == Resource::Cpu ? cpu_footprint : mem_footprint; }
};

/// Directed interaction src -> dst. `remote_penalty`, when set, replaces the
/// source MS penalty for this edge only (aggregated architectures need it).
struct Edge {
  MsId src = 0;
  MsId dst = 0;
  double base_time = 0.0;  // seconds, > 0
  std::optional<double> remote_penalty;
};

/// One control-plane procedure: its microservices and their interaction graph.
/// MS ids are dense, 0..n-1, and equal to their position in ms().
class CpProcedure {
 public:
  CpProcedure(ProcedureId id, std::vector<MsSpec> ms, std::vector<Edge> edges,
              std::string name = {});

  ProcedureId id() const { return id_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return ms_.size(); }
  const std::vector<MsSpec>& ms() const { return ms_; }
  const MsSpec& ms(MsId i) const { return ms_.at(i); }
  const std::vector<Edge>& edges() const { return edges_; }

  const Edge* find_edge(MsId src, MsId dst) const;
  /// Edge indices leaving / entering an MS.
  const std::vector<std::size_t>& out_edges(MsId i) const { return out_.at(i); }
  const std::vector<std::size_t>& in_edges(MsId i) const { return in_.at(i); }

  /// Per-output processing time for an edge: a_ij, or a_ij + c when remote.
  double output_time(const Edge& e, bool colocated) const;

 private:
  ProcedureId id_;
  std::string name_;
  std::vector<MsSpec> ms_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

const CpProcedure& find_procedure(std::span<const CpProcedure> procedures, ProcedureId id);

/// Requested concurrent user requests per procedure id.
using Workload = std::map<ProcedureId, std::uint64_t>;

/// Uniform workload: every procedure gets `requests`.
Workload uniform_workload(std::span<const CpProcedure> procedures, std::uint64_t requests);

/// Instance counts per procedure and MS.
class ReplicaPlan {
 public:
  ReplicaPlan() = default;

  void set(ProcedureId t, std::vector<std::size_t> counts) { counts_[t] = std::move(counts); }
  bool contains(ProcedureId t) const { return counts_.contains(t); }
  const std::vector<std::size_t>& of(ProcedureId t) const;
  std::size_t replicas(ProcedureId t, MsId i) const { return of(t).at(i); }
  std::size_t total_instances() const;
  const std::map<ProcedureId, std::vector<std::size_t>>& all() const { return counts_; }

 private:
  std::map<ProcedureId, std::vector<std::size_t>> counts_;
};

/// tau_i = ceil(U / l_i) for every procedure and MS.
ReplicaPlan replica_counts(std::span<const CpProcedure> procedures, const Workload& workload);

struct InstanceKey {
  ProcedureId procedure = 0;
  MsId ms = 0;
  std::size_t replica = 0;  // 0-based

  auto operator<=>(const InstanceKey&) const = default;
};

/// Instance key -> server. Equivalent to the binary family x^(t,i)_{r,s}.
using Assignment = std::map<InstanceKey, ServerId>;

/// Flat, deterministic numbering of every instance of a plan.
/// Order: procedures as given, then MS id, then replica.
class InstanceTable {
 public:
  InstanceTable(std::span<const CpProcedure> procedures, const ReplicaPlan& plan);

  std::size_t size() const { return keys_.size(); }
  const InstanceKey& key(std::size_t n) const { return keys_[n]; }
  const std::vector<InstanceKey>& keys() const { return keys_; }
  /// Position of the procedure within the span the table was built from.
  std::size_t procedure_position(ProcedureId t) const;
  /// First flat index of (procedure position, MS).
  std::size_t first(std::size_t procedure_position, MsId i) const {
    return offsets_[procedure_position][i];
  }
  std::optional<std::size_t> find(const InstanceKey& k) const;

 private:
  std::vector<InstanceKey> keys_;
  std::map<ProcedureId, std::size_t> position_;
  std::vector<std::vector<std::size_t>> offsets_;  // [proc pos][ms], size ms+1
};

/// Server per flat instance index.
using DenseAssignment = std::vector<ServerId>;

/// Throws DomainError when an instance of the table has no server.
DenseAssignment to_dense(const InstanceTable& table, const Assignment& assignment);
Assignment to_assignment(const InstanceTable& table, std::span<const ServerId> dense);

}  // namespace coreplace

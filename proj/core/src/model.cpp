// SPDX-License-Identifier: Apache-2.0
#include "coreplace/model.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "coreplace/errors.hpp"

namespace coreplace {

namespace {

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

const char* to_string(Resource r) { return r == Resource::Cpu ? "cpu" : "mem"; }

LinkCapacity LinkCapacity::finite(double pdus_per_second) {
  if (!finite_nonnegative(pdus_per_second)) {
    throw ConfigError("link capacity must be finite and nonnegative, got " +
                      std::to_string(pdus_per_second));
  }
  return LinkCapacity(pdus_per_second);
}

double LinkCapacity::value() const {
  if (is_unbounded()) throw DomainError("unbounded link has no finite capacity");
  return std::get<double>(value_);
}

bool LinkCapacity::admits(double flow, double tolerance) const {
  return is_unbounded() || flow <= std::get<double>(value_) + tolerance;
}

Infrastructure::Infrastructure(std::vector<ServerSpec> servers,
                               const std::vector<std::vector<bool>>& adjacency,
                               const std::vector<std::vector<double>>& link_capacity)
    : servers_(std::move(servers)) {
  const std::size_t n = servers_.size();
  for (std::size_t s = 0; s < n; ++s) {
    const auto& srv = servers_[s];
    if (srv.id != s) throw ConfigError("server ids must be 0..n-1 in order");
    if (!finite_nonnegative(srv.cpu_capacity) || !finite_nonnegative(srv.mem_capacity)) {
      throw ConfigError("server " + std::to_string(s) + " has a negative capacity");
    }
  }
  if (adjacency.size() != n || link_capacity.size() != n) {
    throw ConfigError("adjacency and link capacity must be square over the servers");
  }
  adjacency_.assign(n * n, 0);
  capacity_.assign(n * n, LinkCapacity{});
  for (std::size_t a = 0; a < n; ++a) {
    if (adjacency[a].size() != n || link_capacity[a].size() != n) {
      throw ConfigError("adjacency and link capacity must be square over the servers");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        adjacency_[a * n + b] = 1;
        capacity_[a * n + b] = LinkCapacity::unbounded();
        continue;
      }
      if (adjacency[a][b] != adjacency[b][a]) {
        throw ConfigError("adjacency is not symmetric at (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
      }
      const double cap = link_capacity[a][b];
      if (!adjacency[a][b] && cap != 0.0) {
        throw ConfigError("link capacity must be 0 between non-adjacent servers " +
                          std::to_string(a) + " and " + std::to_string(b));
      }
      adjacency_[a * n + b] = adjacency[a][b] ? 1 : 0;
      capacity_[a * n + b] = LinkCapacity::finite(cap);
    }
  }
}

Infrastructure Infrastructure::full_mesh(std::vector<ServerSpec> servers, double link_capacity) {
  std::vector<double> out(servers.size(), link_capacity);
  return full_mesh(std::move(servers), out);
}

Infrastructure Infrastructure::full_mesh(std::vector<ServerSpec> servers,
                                         std::span<const double> outgoing_capacity) {
  const std::size_t n = servers.size();
  if (outgoing_capacity.size() != n) throw ConfigError("one outgoing capacity per server expected");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, true));
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) cap[a][b] = outgoing_capacity[a];
    }
  }
  return Infrastructure(std::move(servers), adj, cap);
}

double Infrastructure::total_capacity(Resource r) const {
  double total = 0.0;
  for (const auto& s : servers_) total += s.capacity(r);
  return total;
}

CpProcedure::CpProcedure(ProcedureId id, std::vector<MsSpec> ms, std::vector<Edge> edges,
                         std::string name)
    : id_(id), name_(std::move(name)), ms_(std::move(ms)), edges_(std::move(edges)) {
  const auto where = [&] { return "procedure " + std::to_string(id_) + ": "; };
  for (std::size_t i = 0; i < ms_.size(); ++i) {
    const auto& m = ms_[i];
    if (m.id != i) throw ConfigError(where() + "MS ids must be 0..n-1 in order");
    if (!finite_nonnegative(m.cpu_footprint) || !finite_nonnegative(m.mem_footprint)) {
      throw ConfigError(where() + "MS " + std::to_string(i) + " has a negative footprint");
    }
    if (!finite_nonnegative(m.remote_penalty)) {
      throw ConfigError(where() + "MS " + std::to_string(i) + " has a negative remote penalty");
    }
    if (m.max_load < 1) throw ConfigError(where() + "MS " + std::to_string(i) + " has max_load 0");
  }
  out_.assign(ms_.size(), {});
  in_.assign(ms_.size(), {});
  std::set<std::pair<MsId, MsId>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    if (e.src >= ms_.size() || e.dst >= ms_.size()) {
      throw ConfigError(where() + "edge references an unknown MS");
    }
    if (e.src == e.dst) throw ConfigError(where() + "self-edge on MS " + std::to_string(e.src));
    if (!std::isfinite(e.base_time) || e.base_time <= 0.0) {
      throw ConfigError(where() + "edge base time must be > 0");
    }
    if (e.remote_penalty && !finite_nonnegative(*e.remote_penalty)) {
      throw ConfigError(where() + "edge remote penalty must be >= 0");
    }
    if (!seen.emplace(e.src, e.dst).second) {
      throw ConfigError(where() + "duplicate edge " + std::to_string(e.src) + "->" +
                        std::to_string(e.dst));
    }
    out_[e.src].push_back(k);
    in_[e.dst].push_back(k);
  }
}

const Edge* CpProcedure::find_edge(MsId src, MsId dst) const {
  if (src >= ms_.size()) return nullptr;
  for (std::size_t k : out_[src]) {
    if (edges_[k].dst == dst) return &edges_[k];
  }
  return nullptr;
}

double CpProcedure::output_time(const Edge& e, bool colocated) const {
  if (colocated) return e.base_time;
  return e.base_time + e.remote_penalty.value_or(ms_[e.src].remote_penalty);
}

const CpProcedure& find_procedure(std::span<const CpProcedure> procedures, ProcedureId id) {
  for (const auto& p : procedures) {
    if (p.id() == id) return p;
  }
  throw DomainError("unknown procedure " + std::to_string(id));
}

Workload uniform_workload(std::span<const CpProcedure> procedures, std::uint64_t requests) {
  Workload w;
  for (const auto& p : procedures) w[p.id()] = requests;
  return w;
}

const std::vector<std::size_t>& ReplicaPlan::of(ProcedureId t) const {
  auto it = counts_.find(t);
  if (it == counts_.end()) throw DomainError("replica plan has no procedure " + std::to_string(t));
  return it->second;
}

std::size_t ReplicaPlan::total_instances() const {
  std::size_t total = 0;
  for (const auto& [t, counts] : counts_) {
    total = std::accumulate(counts.begin(), counts.end(), total);
  }
  return total;
}

ReplicaPlan replica_counts(std::span<const CpProcedure> procedures, const Workload& workload) {
  ReplicaPlan plan;
  for (const auto& p : procedures) {
    auto it = workload.find(p.id());
    if (it == workload.end()) {
      throw ConfigError("workload has no entry for procedure " + std::to_string(p.id()));
    }
    const std::uint64_t u = it->second;
    std::vector<std::size_t> counts(p.size());
    for (const auto& m : p.ms()) {
      counts[m.id] = static_cast<std::size_t>(u / m.max_load + (u % m.max_load != 0 ? 1 : 0));
    }
    plan.set(p.id(), std::move(counts));
  }
  return plan;
}

InstanceTable::InstanceTable(std::span<const CpProcedure> procedures, const ReplicaPlan& plan) {
  offsets_.reserve(procedures.size());
  for (std::size_t pos = 0; pos < procedures.size(); ++pos) {
    const auto& p = procedures[pos];
    if (!position_.emplace(p.id(), pos).second) {
      throw ConfigError("duplicate procedure id " + std::to_string(p.id()));
    }
    const auto& counts = plan.of(p.id());
    if (counts.size() != p.size()) {
      throw ConfigError("replica plan does not match procedure " + std::to_string(p.id()));
    }
    std::vector<std::size_t> offs(p.size() + 1);
    for (MsId i = 0; i < p.size(); ++i) {
      offs[i] = keys_.size();
      for (std::size_t r = 0; r < counts[i]; ++r) keys_.push_back({p.id(), i, r});
    }
    offs[p.size()] = keys_.size();
    offsets_.push_back(std::move(offs));
  }
}

std::size_t InstanceTable::procedure_position(ProcedureId t) const {
  auto it = position_.find(t);
  if (it == position_.end()) throw DomainError("unknown procedure " + std::to_string(t));
  return it->second;
}

std::optional<std::size_t> InstanceTable::find(const InstanceKey& k) const {
  auto it = position_.find(k.procedure);
  if (it == position_.end()) return std::nullopt;
  const auto& offs = offsets_[it->second];
  if (k.ms + 1 >= offs.size()) return std::nullopt;
  const std::size_t n = offs[k.ms] + k.replica;
  if (n >= offs[k.ms + 1]) return std::nullopt;
  return n;
}

DenseAssignment to_dense(const InstanceTable& table, const Assignment& assignment) {
  DenseAssignment dense(table.size());
  for (std::size_t n = 0; n < table.size(); ++n) {
    auto it = assignment.find(table.key(n));
    if (it == assignment.end()) {
      const auto& k = table.key(n);
      throw DomainError("instance (" + std::to_string(k.procedure) + "," + std::to_string(k.ms) +
                        "," + std::to_string(k.replica) + ") is not assigned");
    }
    dense[n] = it->second;
  }
  return dense;
}

Assignment to_assignment(const InstanceTable& table, std::span<const ServerId> dense) {
  if (dense.size() != table.size()) throw DomainError("dense assignment size mismatch");
  Assignment out;
  for (std::size_t n = 0; n < dense.size(); ++n) out.emplace_hint(out.end(), table.key(n), dense[n]);
  return out;
}

}  // namespace coreplace

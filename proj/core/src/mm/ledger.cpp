// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coreplace/errors.hpp"
#include "coreplace/mm/mm.hpp"

namespace coreplace::mm {

PlacementLedger::PlacementLedger(const Infrastructure& infra)
    : infra_(&infra),
      n_(infra.server_count()),
      cpu_(n_),
      mem_(n_),
      link_(n_ * n_, 0.0),
      min_link_residual_(std::numeric_limits<double>::infinity()) {
  for (ServerId s = 0; s < n_; ++s) {
    cpu_[s] = infra.server(s).cpu_capacity;
    mem_[s] = infra.server(s).mem_capacity;
  }
  for (ServerId a = 0; a < n_; ++a) {
    for (ServerId b = 0; b < n_; ++b) {
      if (a == b) continue;
      const auto& cap = infra.link_capacity(a, b);
      link_[a * n_ + b] =
          cap.is_unbounded() ? std::numeric_limits<double>::infinity() : cap.value();
    }
  }
}

LinkCapacity PlacementLedger::link_residual(ServerId a, ServerId b) const {
  if (a == b || std::isinf(link_[a * n_ + b])) return LinkCapacity::unbounded();
  return LinkCapacity::finite(std::max(0.0, link_[a * n_ + b]));
}

void PlacementLedger::begin_procedure(const CpProcedure& procedure,
                                      std::span<const std::size_t> replicas) {
  if (has_procedure(procedure.id())) {
    throw DomainError("procedure " + std::to_string(procedure.id()) + " is already in the ledger");
  }
  if (replicas.size() != procedure.size()) throw DomainError("replica counts do not match procedure");
  procedures_.push_back({procedure, {replicas.begin(), replicas.end()},
                         std::vector<std::size_t>(procedure.size(), 0),
                         MsServerCounts(procedure.size())});
}

bool PlacementLedger::has_procedure(ProcedureId t) const {
  return std::any_of(procedures_.begin(), procedures_.end(),
                     [t](const ProcedureState& p) { return p.procedure.id() == t; });
}

PlacementLedger::ProcedureState& PlacementLedger::state(ProcedureId t) {
  for (auto& p : procedures_) {
    if (p.procedure.id() == t) return p;
  }
  throw DomainError("procedure " + std::to_string(t) + " is not in the ledger");
}

const PlacementLedger::ProcedureState& PlacementLedger::state(ProcedureId t) const {
  return const_cast<PlacementLedger*>(this)->state(t);
}

std::size_t PlacementLedger::placed(ProcedureId t, MsId i) const { return state(t).omega.at(i); }

std::size_t PlacementLedger::replicas(ProcedureId t, MsId i) const {
  return state(t).replicas.at(i);
}

const std::vector<std::pair<ServerId, std::size_t>>& PlacementLedger::hosts(ProcedureId t,
                                                                           MsId i) const {
  return state(t).hosts.at(i);
}

void PlacementLedger::charge(std::size_t link, double flow) {
  link_[link] -= flow;
  min_link_residual_ = std::min(min_link_residual_, link_[link]);
}

void PlacementLedger::place(ProcedureId t, MsId i, ServerId s) {
  auto& st = state(t);
  const auto& p = st.procedure;
  if (s >= n_) throw DomainError("unknown server " + std::to_string(s));
  if (st.omega.at(i) >= st.replicas[i]) {
    throw DomainError("all replicas of MS " + std::to_string(i) + " are already placed");
  }
  const auto& ms = p.ms(i);
  cpu_[s] -= ms.cpu_footprint;
  mem_[s] -= ms.mem_footprint;

  for (std::size_t k : p.out_edges(i)) {
    const auto& e = p.edges()[k];
    const double rate = pair_flow(p, e, st.replicas[e.dst], false);
    for (const auto& [o, count] : st.hosts[e.dst]) {
      if (o != s) charge(s * n_ + o, static_cast<double>(count) * rate);
    }
  }
  for (std::size_t k : p.in_edges(i)) {
    const auto& e = p.edges()[k];
    const double rate = pair_flow(p, e, st.replicas[i], false);
    for (const auto& [o, count] : st.hosts[e.src]) {
      if (o != s) charge(o * n_ + s, static_cast<double>(count) * rate);
    }
  }

  auto& list = st.hosts[i];
  auto it = std::lower_bound(list.begin(), list.end(), s,
                             [](const auto& entry, ServerId v) { return entry.first < v; });
  if (it != list.end() && it->first == s) {
    ++it->second;
  } else {
    list.insert(it, {s, 1});
  }
  assignment_.emplace(InstanceKey{t, i, st.omega[i]}, s);
  ++st.omega[i];
}

LinkFlows PlacementLedger::recompute_flows() const {
  LinkFlows flows(n_);
  for (const auto& st : procedures_) add_procedure_flows(st.procedure, st.replicas, st.hosts, flows);
  return flows;
}

std::vector<CpProcedure> PlacementLedger::procedures() const {
  std::vector<CpProcedure> out;
  for (const auto& st : procedures_) out.push_back(st.procedure);
  return out;
}

}  // namespace coreplace::mm

// SPDX-License-Identifier: Apache-2.0
#include "coreplace/constraints.hpp"

#include <limits>
#include <sstream>

#include "coreplace/flows.hpp"

namespace coreplace {

namespace {

constexpr ServerId kUnplaced = std::numeric_limits<ServerId>::max();

std::string describe(const InstanceKey& k) {
  std::ostringstream os;
  os << "(t=" << k.procedure << ",ms=" << k.ms << ",r=" << k.replica << ")";
  return os.str();
}

void fail(ConstraintCheck& check, Violation v) {
  if (!check.passed) return;
  check.passed = false;
  check.witness = std::move(v);
}

// Core of both overloads. Entries equal to kUnplaced are skipped by the
// adjacency, capacity and flow checks.
ConstraintReport check_dense(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                             const ReplicaPlan& plan, const InstanceTable& table,
                             std::span<const ServerId> dense, ConstraintReport report) {
  const std::size_t n_servers = infra.server_count();
  auto& unique = report.checks[0];
  auto& adjacency = report.checks[1];
  auto& capacity = report.checks[2];
  auto& link = report.checks[3];

  std::vector<ServerId> placed(dense.begin(), dense.end());
  for (std::size_t n = 0; n < placed.size(); ++n) {
    if (placed[n] != kUnplaced && placed[n] >= n_servers) {
      fail(unique, {{table.key(n)}, std::nullopt, std::nullopt, static_cast<double>(placed[n]),
                    static_cast<double>(n_servers),
                    "instance " + describe(table.key(n)) + " mapped to unknown server " +
                        std::to_string(placed[n])});
      placed[n] = kUnplaced;
    }
  }

  std::vector<double> load(n_servers * 2, 0.0);
  std::vector<std::vector<std::size_t>> on_server(n_servers);
  LinkFlows flows(n_servers);

  for (std::size_t pos = 0; pos < procedures.size(); ++pos) {
    const auto& p = procedures[pos];
    MsServerCounts counts(p.size());
    for (MsId i = 0; i < p.size(); ++i) {
      for (std::size_t n = table.first(pos, i); n < table.first(pos, i + 1); ++n) {
        const ServerId s = placed[n];
        if (s == kUnplaced) continue;
        load[s * 2] += p.ms(i).cpu_footprint;
        load[s * 2 + 1] += p.ms(i).mem_footprint;
        on_server[s].push_back(n);
        auto& list = counts[i];
        bool found = false;
        for (auto& [srv, c] : list) {
          if (srv == s) {
            ++c;
            found = true;
            break;
          }
        }
        if (!found) list.emplace_back(s, 1);
      }
    }
    if (adjacency.passed) {
      for (const auto& e : p.edges()) {
        for (const auto& [a, na] : counts[e.src]) {
          for (const auto& [b, nb] : counts[e.dst]) {
            if (infra.adjacent(a, b)) continue;
            InstanceKey from{}, to{};
            for (std::size_t n = table.first(pos, e.src); n < table.first(pos, e.src + 1); ++n) {
              if (placed[n] == a) { from = table.key(n); break; }
            }
            for (std::size_t n = table.first(pos, e.dst); n < table.first(pos, e.dst + 1); ++n) {
              if (placed[n] == b) { to = table.key(n); break; }
            }
            fail(adjacency, {{from, to}, std::pair{a, b}, std::nullopt, 0.0, 0.0,
                             "instances " + describe(from) + " on server " + std::to_string(a) +
                                 " and " + describe(to) + " on server " + std::to_string(b) +
                                 " communicate but the servers are not adjacent"});
            break;
          }
          if (!adjacency.passed) break;
        }
      }
    }
    add_procedure_flows(p, plan.of(p.id()), counts, flows);
  }

  for (ServerId s = 0; s < n_servers && capacity.passed; ++s) {
    for (Resource r : kResources) {
      const double used = load[s * 2 + (r == Resource::Cpu ? 0 : 1)];
      const double limit = infra.server(s).capacity(r);
      if (used > limit + kTolerance) {
        std::vector<InstanceKey> keys;
        for (std::size_t n : on_server[s]) keys.push_back(table.key(n));
        std::ostringstream os;
        os << "server " << s << " " << to_string(r) << " load " << used << " exceeds capacity "
           << limit;
        fail(capacity, {std::move(keys), std::pair{s, s}, r, used, limit, os.str()});
        break;
      }
    }
  }

  for (ServerId a = 0; a < n_servers && link.passed; ++a) {
    for (ServerId b = 0; b < n_servers; ++b) {
      const auto& cap = infra.link_capacity(a, b);
      if (cap.admits(flows(a, b))) continue;
      std::ostringstream os;
      os << "flow " << flows(a, b) << " on link " << a << "->" << b << " exceeds capacity "
         << cap.value();
      fail(link, {{}, std::pair{a, b}, std::nullopt, flows(a, b), cap.value(), os.str()});
      break;
    }
  }
  return report;
}

ConstraintReport fresh_report() {
  ConstraintReport r;
  r.checks[0].kind = ConstraintKind::Uniqueness;
  r.checks[1].kind = ConstraintKind::Adjacency;
  r.checks[2].kind = ConstraintKind::Capacity;
  r.checks[3].kind = ConstraintKind::LinkCapacity;
  return r;
}

}  // namespace

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Uniqueness: return "uniqueness";
    case ConstraintKind::Adjacency: return "adjacency";
    case ConstraintKind::Capacity: return "capacity";
    case ConstraintKind::LinkCapacity: return "link-capacity";
  }
  return "?";
}

bool ConstraintReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ConstraintReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << to_string(c.kind) << ": " << (c.passed ? "pass" : "FAIL");
    if (c.witness) os << " - " << c.witness->message;
    os << '\n';
  }
  return os.str();
}

ConstraintReport check_constraints(const Infrastructure& infra,
                                   std::span<const CpProcedure> procedures,
                                   const ReplicaPlan& plan, const Assignment& assignment) {
  ConstraintReport report = fresh_report();
  auto& unique = report.checks[0];
  const InstanceTable table(procedures, plan);
  std::vector<ServerId> dense(table.size(), kUnplaced);
  for (const auto& [key, s] : assignment) {
    auto n = table.find(key);
    if (!n) {
      fail(unique, {{key}, std::nullopt, std::nullopt, 0.0, 0.0,
                    "instance " + describe(key) + " is not part of the replica plan"});
      continue;
    }
    dense[*n] = s;
  }
  for (std::size_t n = 0; n < dense.size(); ++n) {
    if (dense[n] == kUnplaced) {
      fail(unique, {{table.key(n)}, std::nullopt, std::nullopt, 0.0, 0.0,
                    "instance " + describe(table.key(n)) + " is not mapped to any server"});
    }
  }
  return check_dense(infra, procedures, plan, table, dense, std::move(report));
}

ConstraintReport check_constraints(const Infrastructure& infra,
                                   std::span<const CpProcedure> procedures,
                                   const ReplicaPlan& plan, const InstanceTable& table,
                                   std::span<const ServerId> dense) {
  return check_dense(infra, procedures, plan, table, dense, fresh_report());
}

}  // namespace coreplace

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace {

enum class ConstraintKind {
  Uniqueness,    // every instance on exactly one known server
  Adjacency,     // communicating instances on adjacent servers
  Capacity,      // per-server CPU / memory
  LinkCapacity,  // per-link flow
};

const char* to_string(ConstraintKind k);

/// First offending instance(s), server pair or resource found for a constraint.
struct Violation {
  std::vector<InstanceKey> instances;
  std::optional<std::pair<ServerId, ServerId>> servers;
  std::optional<Resource> resource;
  double amount = 0.0;
  double limit = 0.0;
  std::string message;
};

struct ConstraintCheck {
  ConstraintKind kind = ConstraintKind::Uniqueness;
  bool passed = true;
  std::optional<Violation> witness;
};

struct ConstraintReport {
  std::array<ConstraintCheck, 4> checks{};

  bool all_pass() const;
  const ConstraintCheck& operator[](ConstraintKind k) const {
    return checks[static_cast<std::size_t>(k)];
  }
  /// Human readable, one line per constraint.
  std::string summary() const;
};

/// Checks uniqueness, adjacency, server capacity and link capacity.
/// Violations are reported, never thrown.
ConstraintReport check_constraints(const Infrastructure& infra,
                                   std::span<const CpProcedure> procedures,
                                   const ReplicaPlan& plan, const Assignment& assignment);

/// Dense variant; every entry of `dense` must be a server of `infra` for the
/// uniqueness check to pass.
ConstraintReport check_constraints(const Infrastructure& infra,
                                   std::span<const CpProcedure> procedures,
                                   const ReplicaPlan& plan, const InstanceTable& table,
                                   std::span<const ServerId> dense);

}  // namespace coreplace

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>

#include "coreplace/exact/ilp_model.hpp"
#include "coreplace/model.hpp"

namespace coreplace::exact {

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

const char* to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Assignment> assignment;  // best found
  double psi = 0.0;                      // objective of `assignment`
  double lower_bound = 0.0;
  std::uint64_t nodes = 0;
  std::chrono::duration<double> wall_time{0.0};
};

inline constexpr double kDefaultTimeLimitSeconds = 300.0;

/// Depth-first branch-and-bound over the placement binaries of `model`.
///
/// Product variables are fixed to the product of their factors, which is the
/// only value the McCormick rows admit at integral points. All rows other
/// than assignment and McCormick rows must be <= rows with nonnegative
/// coefficients. Pruning uses residual row capacity and a combinatorial lower
/// bound; interchangeable empty servers are branched on once.
/// Throws ConfigError when time_limit_s <= 0.
SolveOutcome solve_bnb(const IlpModel& model, double time_limit_s = kDefaultTimeLimitSeconds);

/// Largest |S|^instances the exhaustive oracle accepts.
inline constexpr std::uint64_t kOracleMaxAssignments = 10'000'000;

/// Enumerates every assignment, keeps those passing check_constraints and
/// returns the one with minimum Psi (first found on ties).
/// Throws SearchSpaceError above kOracleMaxAssignments.
SolveOutcome brute_force_oracle(const Infrastructure& infra,
                                std::span<const CpProcedure> procedures, const ReplicaPlan& plan);

}  // namespace coreplace::exact

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "coreplace/model.hpp"

namespace coreplace::scenario {

enum class Homogeneity { Homogeneous, NonHomogeneous };

const char* to_string(Homogeneity h);
/// Accepts "homogeneous" and "non-homogeneous" (or "nonhomogeneous").
Homogeneity parse_homogeneity(std::string_view text);

/// Aggregate demand a farm is sized for.
struct FarmDemand {
  double cpu = 0.0;  // total footprint of every instance
  double mem = 0.0;
  std::size_t instances = 0;
  double min_cpu = 0.0;  // smallest positive per-instance footprint, 0 if none
  double min_mem = 0.0;
  double max_out_flow = 0.0;  // largest per-instance outgoing remote flow
};

/// Demand of placing every instance of `plan`.
FarmDemand farm_demand(std::span<const CpProcedure> procedures, const ReplicaPlan& plan);

struct FarmConfig {
  double server_ratio = 0.75;
  Homogeneity homogeneity = Homogeneity::Homogeneous;
  std::uint64_t seed = 0;
  /// Overrides ceil(server_ratio * ms_count) when set.
  std::optional<std::size_t> server_count;
};

/// ceil(ratio * ms_count), ignoring floating-point noise below 1e-9.
std::size_t ratio_server_count(double server_ratio, std::size_t ms_count);

/// Number of reduced-capacity servers in a non-homogeneous farm of n servers.
std::size_t small_server_count(std::size_t n);

/// Full-mesh farm for `demand`.
///
/// Homogeneous: every server gets ceil(total / n) per resource.
/// Non-homogeneous: small_server_count(n) servers, picked by a seeded
/// shuffle, get ceil(total / 3n); the rest get ceil(2 total / 3n).
/// Link a->b carries k_a * max_out_flow, where k_a is how many of the
/// smallest instances server a can host, capped at the instance count.
/// Throws ConfigError for ms_count == 0 or a nonpositive ratio.
Infrastructure gen_farm(const FarmDemand& demand, std::size_t ms_count, const FarmConfig& config);

/// Largest U with sum over procedures and MSs of ceil(U / l) * f <= total
/// farm capacity, for both resources. Returns kUnboundedLoad when no MS
/// has a positive footprint.
inline constexpr std::uint64_t kUnboundedLoad = UINT64_MAX;
std::uint64_t u_max(const Infrastructure& infra, std::span<const CpProcedure> procedures);

/// Farm of `server_count` servers generated from the demand of a uniform
/// load L, with L the smallest value whose farm reaches u_max >= target.
Infrastructure size_farm_for_u_max(std::span<const CpProcedure> procedures,
                                   std::uint64_t target, std::size_t server_count,
                                   Homogeneity homogeneity, std::uint64_t seed);

}  // namespace coreplace::scenario

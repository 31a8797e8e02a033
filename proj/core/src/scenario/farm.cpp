// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coreplace/errors.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"

namespace coreplace::scenario {

const char* to_string(Homogeneity h) {
  return h == Homogeneity::Homogeneous ? "homogeneous" : "non-homogeneous";
}

Homogeneity parse_homogeneity(std::string_view text) {
  if (text == "homogeneous") return Homogeneity::Homogeneous;
  if (text == "non-homogeneous" || text == "nonhomogeneous") return Homogeneity::NonHomogeneous;
  throw ConfigError("unknown homogeneity '" + std::string(text) + "'");
}

namespace {

// ceil that ignores representation noise, e.g. 0.75 * 8 = 6.000000000000001.
double ceil_tol(double v) { return std::ceil(v - 1e-9); }

double smaller_positive(double current, double v) {
  if (v <= 0.0) return current;
  return current == 0.0 ? v : std::min(current, v);
}

}  // namespace

FarmDemand farm_demand(std::span<const CpProcedure> procedures, const ReplicaPlan& plan) {
  FarmDemand d;
  for (const auto& p : procedures) {
    const auto& tau = plan.of(p.id());
    for (const auto& m : p.ms()) {
      const auto n = tau.at(m.id);
      d.cpu += static_cast<double>(n) * m.cpu_footprint;
      d.mem += static_cast<double>(n) * m.mem_footprint;
      d.instances += n;
      if (n == 0) continue;
      d.min_cpu = smaller_positive(d.min_cpu, m.cpu_footprint);
      d.min_mem = smaller_positive(d.min_mem, m.mem_footprint);
      double out = 0.0;
      for (std::size_t k : p.out_edges(m.id)) out += 1.0 / p.output_time(p.edges()[k], false);
      d.max_out_flow = std::max(d.max_out_flow, out);
    }
  }
  return d;
}

std::size_t ratio_server_count(double server_ratio, std::size_t ms_count) {
  if (!(server_ratio > 0.0)) throw ConfigError("server ratio must be positive");
  return static_cast<std::size_t>(
      std::max(1.0, ceil_tol(server_ratio * static_cast<double>(ms_count))));
}

std::size_t small_server_count(std::size_t n) {
  if (n < 2) return 0;
  return std::max<std::size_t>(1, n / 4);
}

Infrastructure gen_farm(const FarmDemand& demand, std::size_t ms_count, const FarmConfig& config) {
  if (ms_count == 0) throw ConfigError("ms_count must be positive");
  const std::size_t n = config.server_count ? *config.server_count
                                            : ratio_server_count(config.server_ratio, ms_count);
  if (n == 0) throw ConfigError("server count must be positive");
  const double nd = static_cast<double>(n);

  std::vector<char> small(n, 0);
  if (config.homogeneity == Homogeneity::NonHomogeneous) {
    std::vector<ServerId> ids(n);
    for (ServerId s = 0; s < n; ++s) ids[s] = s;
    Rng rng(config.seed);
    rng.shuffle(ids);
    for (std::size_t k = 0; k < small_server_count(n); ++k) small[ids[k]] = 1;
  }

  std::vector<ServerSpec> servers;
  std::vector<double> outgoing;
  for (ServerId s = 0; s < n; ++s) {
    double cpu, mem;
    if (config.homogeneity == Homogeneity::Homogeneous) {
      cpu = ceil_tol(demand.cpu / nd);
      mem = ceil_tol(demand.mem / nd);
    } else if (small[s]) {
      cpu = ceil_tol(demand.cpu / (3.0 * nd));
      mem = ceil_tol(demand.mem / (3.0 * nd));
    } else {
      cpu = ceil_tol(2.0 * demand.cpu / (3.0 * nd));
      mem = ceil_tol(2.0 * demand.mem / (3.0 * nd));
    }
    servers.push_back({s, cpu, mem});

    double fit = static_cast<double>(demand.instances);
    if (demand.min_cpu > 0.0) fit = std::min(fit, std::floor(cpu / demand.min_cpu + 1e-9));
    if (demand.min_mem > 0.0) fit = std::min(fit, std::floor(mem / demand.min_mem + 1e-9));
    outgoing.push_back(fit * demand.max_out_flow);
  }
  return Infrastructure::full_mesh(std::move(servers), outgoing);
}

namespace {

// Demand of a uniform load U on one resource.
double load_demand(std::span<const CpProcedure> procedures, std::uint64_t u, Resource r) {
  double total = 0.0;
  for (const auto& p : procedures) {
    for (const auto& m : p.ms()) {
      const std::uint64_t tau = u / m.max_load + (u % m.max_load != 0 ? 1 : 0);
      total += static_cast<double>(tau) * m.footprint(r);
    }
  }
  return total;
}

}  // namespace

std::uint64_t u_max(const Infrastructure& infra, std::span<const CpProcedure> procedures) {
  auto fits = [&](std::uint64_t u) {
    for (Resource r : kResources) {
      if (load_demand(procedures, u, r) > infra.total_capacity(r) + kTolerance) return false;
    }
    return true;
  };
  bool any_positive = false;
  for (const auto& p : procedures) {
    for (const auto& m : p.ms()) {
      if (m.cpu_footprint > 0.0 || m.mem_footprint > 0.0) any_positive = true;
    }
  }
  if (!any_positive) return kUnboundedLoad;
  // Demand is nondecreasing in U: grow an upper bracket, then bisect.
  std::uint64_t lo = 0, hi = 1;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

Infrastructure size_farm_for_u_max(std::span<const CpProcedure> procedures,
                                   std::uint64_t target, std::size_t server_count,
                                   Homogeneity homogeneity, std::uint64_t seed) {
  std::size_t ms_count = 0;
  for (const auto& p : procedures) ms_count += p.size();
  FarmConfig config;
  config.homogeneity = homogeneity;
  config.seed = seed;
  config.server_count = server_count;

  std::vector<CpProcedure> procs(procedures.begin(), procedures.end());
  auto build = [&](std::uint64_t load) {
    const ReplicaPlan plan = replica_counts(procs, uniform_workload(procs, load));
    return gen_farm(farm_demand(procs, plan), ms_count, config);
  };
  if (target == 0) return build(0);
  // Farm capacity grows with the sizing load, so u_max does too.
  std::uint64_t lo = 0, hi = std::max<std::uint64_t>(target, 1);
  while (u_max(build(hi), procs) < target) {
    lo = hi;
    if (hi > (UINT64_MAX >> 2)) throw DomainError("cannot size a farm for the requested load");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (u_max(build(mid), procs) >= target ? hi : lo) = mid;
  }
  return build(hi);
}

}  // namespace coreplace::scenario

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <limits>

#include "coreplace/mm/mm.hpp"

namespace coreplace::mm {

BffResult bff_select(const PlacementLedger& ledger, const CpProcedure& procedure,
                     std::optional<ServerId> previous, double previous_flow,
                     const Fragment& fragment, bool list_candidates) {
  const auto& infra = ledger.infra();
  const std::size_t n = infra.server_count();
  const ProcedureId t = procedure.id();

  // Flow the new instances would exchange with partners already placed on
  // each server, if they landed elsewhere.
  std::vector<double> out(n, 0.0), in(n, 0.0);
  std::vector<char> partner(n, 0);
  for (MsId i : fragment.members) {
    for (std::size_t k : procedure.out_edges(i)) {
      const auto& e = procedure.edges()[k];
      const double rate = pair_flow(procedure, e, ledger.replicas(t, e.dst), false);
      for (const auto& [o, count] : ledger.hosts(t, e.dst)) {
        out[o] += static_cast<double>(count) * rate;
        partner[o] = 1;
      }
    }
    for (std::size_t k : procedure.in_edges(i)) {
      const auto& e = procedure.edges()[k];
      const double rate = pair_flow(procedure, e, ledger.replicas(t, i), false);
      for (const auto& [o, count] : ledger.hosts(t, e.src)) {
        in[o] += static_cast<double>(count) * rate;
        partner[o] = 1;
      }
    }
  }
  std::vector<ServerId> partner_servers;
  for (ServerId o = 0; o < n; ++o) {
    if (partner[o]) partner_servers.push_back(o);
  }

  // Unclamped residuals, so tolerance slack cannot accumulate across placements.
  auto fits = [&](ServerId a, ServerId b, double flow) {
    return a == b || flow <= ledger.link_residual_value(a, b) + kTolerance;
  };

  auto link_rules_hold = [&](ServerId s) {
    if (previous && *previous != s) {
      if (!infra.adjacent(*previous, s) || !fits(*previous, s, previous_flow)) return false;
    }
    for (ServerId o : partner_servers) {
      if (o == s) continue;
      if (!infra.adjacent(s, o) || !fits(s, o, out[o]) || !fits(o, s, in[o])) return false;
    }
    return true;
  };

  // Servers with room for the fragment, tightest fit first.
  std::vector<std::pair<double, ServerId>> roomy;
  for (ServerId s = 0; s < n; ++s) {
    const double cpu_left = ledger.residual(s, Resource::Cpu) - fragment.delta_cpu;
    const double mem_left = ledger.residual(s, Resource::Mem) - fragment.delta_mem;
    if (cpu_left < -kTolerance || mem_left < -kTolerance) continue;
    roomy.emplace_back(cpu_left + mem_left, s);
  }
  std::sort(roomy.begin(), roomy.end());

  BffResult result;
  for (std::size_t k = 0; k < roomy.size(); ++k) {
    // Slacks within tolerance count as equal; the lowest id among them wins.
    std::size_t end = k + 1;
    while (end < roomy.size() && roomy[end].first <= roomy[k].first + kTolerance) ++end;
    std::optional<ServerId> best;
    for (std::size_t q = k; q < end; ++q) {
      const ServerId s = roomy[q].second;
      if (best && s > *best && !list_candidates) continue;
      if (!link_rules_hold(s)) continue;
      if (list_candidates) result.candidates.push_back(s);
      if (!best || s < *best) best = s;
    }
    if (best && !result.server) {
      result.server = best;
      if (!list_candidates) break;
    }
    k = end - 1;
  }
  std::sort(result.candidates.begin(), result.candidates.end());
  return result;
}

}  // namespace coreplace::mm

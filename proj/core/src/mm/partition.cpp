// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "coreplace/errors.hpp"
#include "coreplace/mm/min_cut.hpp"
#include "coreplace/mm/mm.hpp"

namespace coreplace::mm {

Fragment make_fragment(const CpProcedure& procedure, std::span<const std::size_t> replicas,
                       std::vector<MsId> members) {
  if (members.empty()) throw DomainError("fragment must have at least one member");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Fragment f;
  for (MsId i : members) {
    f.delta_cpu += procedure.ms(i).cpu_footprint;
    f.delta_mem += procedure.ms(i).mem_footprint;
    for (std::size_t k : procedure.out_edges(i)) {
      const auto& e = procedure.edges()[k];
      if (!std::binary_search(members.begin(), members.end(), e.dst)) {
        f.delta_out += pair_flow(procedure, e, replicas[e.dst], false);
      }
    }
  }
  f.members = std::move(members);
  return f;
}

std::pair<Fragment, Fragment> gp_partition(const CpProcedure& procedure,
                                           std::span<const std::size_t> replicas,
                                           const Fragment& fragment) {
  const auto& members = fragment.members;
  const std::size_t n = members.size();
  if (n < 2) throw DomainError("cannot partition a fragment with fewer than two members");

  WeightMatrix w(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k : procedure.out_edges(members[u])) {
      const auto& e = procedure.edges()[k];
      auto it = std::lower_bound(members.begin(), members.end(), e.dst);
      if (it == members.end() || *it != e.dst) continue;
      const auto v = static_cast<std::size_t>(it - members.begin());
      const double rate = pair_flow(procedure, e, replicas[e.dst], false);
      w[u][v] += rate;
      w[v][u] += rate;
    }
  }
  const Cut cut = global_min_cut(w);

  std::vector<char> in_side(n, 0);
  for (std::size_t v : cut.side) in_side[v] = 1;
  std::vector<MsId> first, second;
  const char first_flag = in_side[0];
  for (std::size_t v = 0; v < n; ++v) {
    (in_side[v] == first_flag ? first : second).push_back(members[v]);
  }
  return {make_fragment(procedure, replicas, std::move(first)),
          make_fragment(procedure, replicas, std::move(second))};
}

}  // namespace coreplace::mm

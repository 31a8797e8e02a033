// SPDX-License-Identifier: Apache-2.0
#include "coreplace/mm/min_cut.hpp"

#include <algorithm>
#include <limits>

#include "coreplace/errors.hpp"

namespace coreplace::mm {

namespace {

// Smaller side of a bipartition; equal sizes pick the lexicographically smaller.
std::vector<std::size_t> normalize(std::vector<std::size_t> side, std::size_t n) {
  std::sort(side.begin(), side.end());
  std::vector<std::size_t> rest;
  rest.reserve(n - side.size());
  std::size_t k = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (k < side.size() && side[k] == v) {
      ++k;
    } else {
      rest.push_back(v);
    }
  }
  if (rest.size() < side.size() || (rest.size() == side.size() && rest < side)) return rest;
  return side;
}

std::vector<std::size_t> component_of_zero(const WeightMatrix& w) {
  const std::size_t n = w.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0}, comp;
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    comp.push_back(v);
    for (std::size_t u = 0; u < n; ++u) {
      if (!seen[u] && w[v][u] > 0.0) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return comp;
}

}  // namespace

double cut_value(const WeightMatrix& weights, const std::vector<std::size_t>& side) {
  std::vector<char> in(weights.size(), 0);
  for (std::size_t v : side) in[v] = 1;
  double total = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (!in[a]) continue;
    for (std::size_t b = 0; b < weights.size(); ++b) {
      if (!in[b]) total += weights[a][b];
    }
  }
  return total;
}

Cut global_min_cut(const WeightMatrix& weights, double tolerance) {
  const std::size_t n = weights.size();
  if (n < 2) throw DomainError("minimum cut needs at least two vertices");
  for (const auto& row : weights) {
    if (row.size() != n) throw DomainError("weight matrix must be square");
  }

  auto comp = component_of_zero(weights);
  if (comp.size() < n) return {normalize(std::move(comp), n), 0.0};

  WeightMatrix w = weights;
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {v};
  std::vector<std::size_t> alive(n);
  for (std::size_t v = 0; v < n; ++v) alive[v] = v;

  Cut best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> conn(n);
  std::vector<char> added(n);

  while (alive.size() > 1) {
    // maximum adjacency ordering from the lowest alive vertex
    std::fill(added.begin(), added.end(), 0);
    std::fill(conn.begin(), conn.end(), 0.0);
    std::size_t prev = alive.front();
    std::size_t last = prev;
    added[prev] = 1;
    for (std::size_t u : alive) conn[u] = w[prev][u];
    for (std::size_t step = 1; step < alive.size(); ++step) {
      std::size_t pick = n;
      for (std::size_t u : alive) {
        if (added[u]) continue;
        if (pick == n || conn[u] > conn[pick]) pick = u;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 < alive.size()) {
        for (std::size_t u : alive) {
          if (!added[u]) conn[u] += w[pick][u];
        }
      }
    }
    const double phase_value = conn[last];
    auto side = normalize(members[last], n);
    if (phase_value < best.value - tolerance ||
        (phase_value <= best.value + tolerance && side < best.side)) {
      best.value = phase_value;
      best.side = std::move(side);
    }
    // merge `last` into `prev`
    for (std::size_t u : alive) {
      w[prev][u] += w[last][u];
      w[u][prev] = w[prev][u];
    }
    w[prev][prev] = 0.0;
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    alive.erase(std::find(alive.begin(), alive.end(), last));
  }
  best.value = cut_value(weights, best.side);
  return best;
}

}  // namespace coreplace::mm

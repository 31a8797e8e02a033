// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace coreplace::mm {

/// Symmetric, nonnegative weight matrix over vertices 0..n-1.
using WeightMatrix = std::vector<std::vector<double>>;

struct Cut {
  std::vector<std::size_t> side;  // sorted; the smaller side, ties lexicographic
  double value = 0.0;
};

/// Global minimum cut (Stoer-Wagner). A disconnected graph is split along the
/// connected component of vertex 0. Among equal-valued cuts found, the one
/// whose `side` is lexicographically smallest wins. Requires n >= 2.
Cut global_min_cut(const WeightMatrix& weights, double tolerance = 1e-9);

/// Weight crossing between `side` and its complement.
double cut_value(const WeightMatrix& weights, const std::vector<std::size_t>& side);

}  // namespace coreplace::mm

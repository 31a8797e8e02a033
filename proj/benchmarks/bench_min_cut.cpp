// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "coreplace/mm/min_cut.hpp"
#include "coreplace/rng.hpp"

using namespace coreplace;

namespace {

void BM_GlobalMinCut(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  mm::WeightMatrix w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(0.5)) w[i][j] = w[j][i] = 1.0 + static_cast<double>(rng.below(1000));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(mm::global_min_cut(w));
}
BENCHMARK(BM_GlobalMinCut)->RangeMultiplier(2)->Range(8, 128);

}  // namespace

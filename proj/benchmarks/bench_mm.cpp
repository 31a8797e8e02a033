// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "coreplace/mm/mm.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"
#include "coreplace/scenario/fivegc.hpp"
#include "coreplace/scenario/random_graph.hpp"

using namespace coreplace;

namespace {

void BM_MmRandom(benchmark::State& state) {
  const auto ms = static_cast<std::size_t>(state.range(0));
  scenario::RandomGraphConfig g;
  g.ms_count = ms;
  g.seed = 17;
  const std::vector<CpProcedure> procs{scenario::gen_random_procedure(g)};
  const auto plan = replica_counts(procs, uniform_workload(procs, 1));
  scenario::FarmConfig f;
  f.seed = mix64(17);
  const auto infra = scenario::gen_farm(scenario::farm_demand(procs, plan), ms, f);
  for (auto _ : state) benchmark::DoNotOptimize(mm::mm_map_all(infra, procs, plan));
}
BENCHMARK(BM_MmRandom)->DenseRange(6, 10, 2)->Arg(20)->Arg(40);

void BM_Mm5gc(benchmark::State& state) {
  const auto load = static_cast<std::uint64_t>(state.range(0));
  const auto procs = scenario::gen_5gc_workload();
  const auto infra =
      scenario::size_farm_for_u_max(procs, load, 100, scenario::Homogeneity::NonHomogeneous, 1);
  const auto plan = replica_counts(procs, uniform_workload(procs, load));
  for (auto _ : state) benchmark::DoNotOptimize(mm::mm_map_all(infra, procs, plan));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.total_instances()));
}
BENCHMARK(BM_Mm5gc)->Arg(50)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "coreplace/exact/solver.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"
#include "coreplace/scenario/random_graph.hpp"

using namespace coreplace;

namespace {

struct Instance {
  std::vector<CpProcedure> procs;
  ReplicaPlan plan;
  Infrastructure infra;
};

Instance make(std::size_t ms, double pi) {
  scenario::RandomGraphConfig g;
  g.ms_count = ms;
  g.edge_probability = pi;
  g.seed = 29;
  std::vector<CpProcedure> procs{scenario::gen_random_procedure(g)};
  auto plan = replica_counts(procs, uniform_workload(procs, 1));
  scenario::FarmConfig f;
  f.seed = mix64(29);
  auto infra = scenario::gen_farm(scenario::farm_demand(procs, plan), ms, f);
  return {std::move(procs), std::move(plan), std::move(infra)};
}

void BM_Linearize(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 0.75);
  for (auto _ : state) benchmark::DoNotOptimize(exact::linearize(inst.infra, inst.procs, inst.plan));
}
BENCHMARK(BM_Linearize)->DenseRange(6, 10, 2);

void BM_SolveBnb(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 0.75);
  const auto model = exact::linearize(inst.infra, inst.procs, inst.plan);
  for (auto _ : state) benchmark::DoNotOptimize(exact::solve_bnb(model, 300.0));
}
BENCHMARK(BM_SolveBnb)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact::brute_force_oracle(inst.infra, inst.procs, inst.plan));
  }
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

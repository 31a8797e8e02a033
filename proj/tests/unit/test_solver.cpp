// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "coreplace/constraints.hpp"
#include "coreplace/errors.hpp"
#include "coreplace/exact/solver.hpp"
#include "coreplace/flows.hpp"
#include "coreplace/rng.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using namespace coreplace::exact;
using namespace coreplace::testing;

namespace {

SolveOutcome solve(const Infrastructure& infra, const std::vector<CpProcedure>& procs,
                   const ReplicaPlan& plan, double limit = 60.0) {
  return solve_bnb(linearize(infra, procs, plan), limit);
}

}  // namespace

TEST(Solver, SingleInstanceIsFree) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{CpProcedure(0, {{0, 1, 1, kC, 1}}, {})};
  const auto out = solve(infra, procs, plan_for(procs, 1));
  EXPECT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_EQ(out.psi, 0.0);
}

TEST(Solver, ForcedSplit) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto plan = plan_for(procs, 1);
  const auto bnb = solve(infra, procs, plan);
  ASSERT_EQ(bnb.status, SolveStatus::Optimal);
  EXPECT_NEAR(bnb.psi, 2000.0 / 3.0, 1e-6);
  EXPECT_NEAR(bnb.lower_bound, bnb.psi, 1e-9);
  const auto oracle = brute_force_oracle(infra, procs, plan);
  EXPECT_EQ(oracle.nodes, 4u);
  EXPECT_NEAR(oracle.psi, bnb.psi, 1e-9);
}

TEST(Solver, HeavierEdgeStaysColocated) {
  // 0 -1ms-> 1 -2ms-> 2; rates if split: 666.667 and 400.
  const auto infra = mesh({2, 1});
  const std::vector<CpProcedure> procs{chain(0, {kA, 2 * kA})};
  const auto plan = plan_for(procs, 1);
  const auto oracle = brute_force_oracle(infra, procs, plan);
  ASSERT_EQ(oracle.status, SolveStatus::Optimal);
  EXPECT_NEAR(oracle.psi, remote_rate(2 * kA, kC), 1e-9);
  EXPECT_EQ(oracle.assignment->at({0, 0, 0}), oracle.assignment->at({0, 1, 0}));
  const auto bnb = solve(infra, procs, plan);
  ASSERT_EQ(bnb.status, SolveStatus::Optimal);
  EXPECT_NEAR(bnb.psi, 400.0, 1e-9);
}

TEST(Solver, CapacityBelowFootprintIsInfeasible) {
  const auto infra = mesh({0.5, 0.5});
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto plan = plan_for(procs, 1);
  EXPECT_EQ(solve(infra, procs, plan).status, SolveStatus::Infeasible);
  EXPECT_EQ(brute_force_oracle(infra, procs, plan).status, SolveStatus::Infeasible);
}

TEST(Solver, LinkCapacityCanForceInfeasibility) {
  const auto infra = mesh({1, 1}, 500.0);
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  EXPECT_EQ(solve(infra, procs, plan_for(procs, 1)).status, SolveStatus::Infeasible);
}

TEST(Solver, NonPositiveTimeLimitIsConfigError) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto model = linearize(infra, procs, plan_for(procs, 1));
  EXPECT_THROW(solve_bnb(model, 0.0), ConfigError);
  EXPECT_THROW(solve_bnb(model, -1.0), ConfigError);
}

TEST(Solver, OracleRefusesLargeSpaces) {
  const auto infra = mesh(std::vector<double>(10, 100.0));
  const std::vector<CpProcedure> procs{chain(0, std::vector<double>(7, kA))};
  EXPECT_THROW(brute_force_oracle(infra, procs, plan_for(procs, 1)), SearchSpaceError);
}

class SolverEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(SolverEquivalence, MatchesOracle) {
  Rng rng(1000 + static_cast<std::uint64_t>(GetParam()));
  const std::size_t n_servers = 2 + rng.below(2);
  const std::size_t m = 2 + rng.below(3);
  std::vector<MsSpec> ms;
  for (MsId i = 0; i < m; ++i) ms.push_back({i, 1.0, 1.0, kC, 1});
  std::vector<Edge> edges;
  for (MsId i = 0; i < m; ++i) {
    for (MsId j = 0; j < m; ++j) {
      if (i != j && rng.bernoulli(0.5)) edges.push_back({i, j, kA * (1 + rng.below(3)), {}});
    }
  }
  const std::vector<CpProcedure> procs{CpProcedure(0, ms, edges)};
  std::vector<double> caps;
  for (std::size_t s = 0; s < n_servers; ++s) caps.push_back(static_cast<double>(1 + rng.below(3)));
  const auto infra = mesh(caps, rng.bernoulli(0.5) ? 1e12 : 1500.0);
  const auto plan = plan_for(procs, 1);
  const auto oracle = brute_force_oracle(infra, procs, plan);
  const auto bnb = solve(infra, procs, plan);
  ASSERT_EQ(oracle.status == SolveStatus::Infeasible, bnb.status == SolveStatus::Infeasible);
  if (oracle.status != SolveStatus::Optimal) return;
  ASSERT_EQ(bnb.status, SolveStatus::Optimal);
  EXPECT_NEAR(bnb.psi, oracle.psi, 1e-6);
  EXPECT_TRUE(check_constraints(infra, procs, plan, *bnb.assignment).all_pass());
  EXPECT_NEAR(objective_psi(link_flows(infra, procs, plan, *bnb.assignment)), bnb.psi, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SolverEquivalence, ::testing::Range(0, 60));

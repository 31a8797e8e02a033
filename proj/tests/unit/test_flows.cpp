// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "coreplace/errors.hpp"
#include "coreplace/flows.hpp"
#include "coreplace/rng.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using namespace coreplace::testing;

namespace {

// 1/(a+c) with a = 1 ms, c = 0.5 ms, evaluated by hand: 1/0.0015.
constexpr double kRemote = 2000.0 / 3.0;
constexpr double kLocal = 1000.0;

}  // namespace

TEST(PairFlow, ColocatedRemoteAndSplit) {
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  ReplicaPlan plan;
  plan.set(0, {1, 1});
  EXPECT_NEAR(pair_flow(procs[0], plan, 0, 1, true), kLocal, 1e-9);
  EXPECT_NEAR(pair_flow(procs[0], plan, 0, 1, false), kRemote, 1e-9);
  plan.set(0, {1, 2});
  EXPECT_NEAR(pair_flow(procs[0], plan, 0, 1, false), kRemote / 2.0, 1e-9);
}

TEST(PairFlow, Errors) {
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  ReplicaPlan plan;
  plan.set(0, {1, 0});
  EXPECT_THROW(pair_flow(procs[0], plan, 1, 0, false), DomainError);
  EXPECT_THROW(pair_flow(procs[0], plan, 0, 1, false), DomainError);
}

TEST(PairFlow, RemoteStrictlyBelowColocatedWhenPenalized) {
  for (double c : {1e-6, 1e-4, 0.5e-3, 2e-3}) {
    const auto p = chain(0, {kA}, c);
    EXPECT_LT(pair_flow(p, p.edges()[0], 3, false), pair_flow(p, p.edges()[0], 3, true));
  }
}

TEST(LinkFlows, TwoServerChain) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto plan = plan_for(procs, 1);
  const Assignment split{{{0, 0, 0}, 0}, {{0, 1, 0}, 1}};
  const auto xi = link_flows(infra, procs, plan, split);
  EXPECT_NEAR(xi(0, 1), kRemote, 1e-9);
  EXPECT_EQ(xi(1, 0), 0.0);
  EXPECT_NEAR(objective_psi(xi), kRemote, 1e-9);

  const Assignment together{{{0, 0, 0}, 0}, {{0, 1, 0}, 0}};
  const auto local = link_flows(infra, procs, plan, together);
  EXPECT_NEAR(local(0, 0), kLocal, 1e-9);
  EXPECT_EQ(local(0, 1), 0.0);
  EXPECT_EQ(objective_psi(local), 0.0);
}

TEST(LinkFlows, UnknownServerIsDomainError) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto plan = plan_for(procs, 1);
  const Assignment bad{{{0, 0, 0}, 0}, {{0, 1, 0}, 5}};
  EXPECT_THROW(link_flows(infra, procs, plan, bad), DomainError);
}

TEST(ObjectivePsi, SumsOffDiagonal) {
  LinkFlows xi(3);
  xi.at(0, 1) = 100;
  xi.at(1, 2) = 50;
  xi.at(2, 2) = 999;
  EXPECT_DOUBLE_EQ(objective_psi(xi), 150.0);
}

namespace {

// Replica-by-replica flow sum, straight from the definition.
LinkFlows naive_flows(std::size_t n, const std::vector<CpProcedure>& procs, const ReplicaPlan& plan,
                      const Assignment& a) {
  LinkFlows xi(n);
  for (const auto& p : procs) {
    for (const auto& e : p.edges()) {
      const double tau = static_cast<double>(plan.replicas(p.id(), e.dst));
      for (std::size_t r = 0; r < plan.replicas(p.id(), e.src); ++r) {
        for (std::size_t q = 0; q < plan.replicas(p.id(), e.dst); ++q) {
          const ServerId s = a.at({p.id(), e.src, r});
          const ServerId o = a.at({p.id(), e.dst, q});
          const double t = s == o ? e.base_time : e.base_time + p.ms(e.src).remote_penalty;
          xi.at(s, o) += 1.0 / (tau * t);
        }
      }
    }
  }
  return xi;
}

}  // namespace

class FlowProperties : public ::testing::TestWithParam<int> {};

TEST_P(FlowProperties, MatchDefinitionAdditivityAndZeroPsi) {
  Rng rng(static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = 2 + rng.below(3);
  std::vector<CpProcedure> procs;
  for (ProcedureId t = 0; t < 2; ++t) {
    std::vector<MsSpec> ms;
    const std::size_t m = 2 + rng.below(3);
    for (MsId i = 0; i < m; ++i) ms.push_back({i, 1, 1, 0.5e-3, 1 + rng.below(2)});
    std::vector<Edge> edges;
    for (MsId i = 0; i < m; ++i) {
      for (MsId j = 0; j < m; ++j) {
        if (i != j && rng.bernoulli(0.5)) edges.push_back({i, j, 1e-3 * (1 + rng.below(3)), {}});
      }
    }
    procs.emplace_back(t, ms, edges);
  }
  const auto plan = replica_counts(procs, {{0, 1 + rng.below(3)}, {1, 1 + rng.below(3)}});
  const auto infra = mesh(std::vector<double>(n, 100.0));
  Assignment a;
  const InstanceTable table(procs, plan);
  for (const auto& key : table.keys()) a[key] = rng.below(n);

  const auto xi = link_flows(infra, procs, plan, a);
  const auto expected = naive_flows(n, procs, plan, a);
  for (ServerId s = 0; s < n; ++s) {
    for (ServerId o = 0; o < n; ++o) EXPECT_NEAR(xi(s, o), expected(s, o), 1e-6);
  }

  // Additivity over disjoint procedure sets.
  const std::vector<CpProcedure> first{procs[0]}, second{procs[1]};
  Assignment a0, a1;
  for (const auto& [k, s] : a) (k.procedure == 0 ? a0 : a1)[k] = s;
  auto sum = link_flows(infra, first, plan, a0);
  sum += link_flows(infra, second, plan, a1);
  for (ServerId s = 0; s < n; ++s) {
    for (ServerId o = 0; o < n; ++o) EXPECT_NEAR(xi(s, o), sum(s, o), 1e-6);
  }

  // Psi is zero exactly when no communicating pair spans two servers.
  bool spans = false;
  for (const auto& p : procs) {
    for (const auto& e : p.edges()) {
      for (std::size_t r = 0; r < plan.replicas(p.id(), e.src); ++r) {
        for (std::size_t q = 0; q < plan.replicas(p.id(), e.dst); ++q) {
          spans |= a.at({p.id(), e.src, r}) != a.at({p.id(), e.dst, q});
        }
      }
    }
  }
  EXPECT_EQ(objective_psi(xi) > 0.0, spans);

  // Relabeling servers permutes flows without changing Psi.
  std::vector<ServerId> perm(n);
  for (ServerId s = 0; s < n; ++s) perm[s] = s;
  rng.shuffle(perm);
  Assignment relabeled;
  for (const auto& [k, s] : a) relabeled[k] = perm[s];
  EXPECT_NEAR(objective_psi(link_flows(infra, procs, plan, relabeled)), objective_psi(xi), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Seeds, FlowProperties, ::testing::Range(0, 40));

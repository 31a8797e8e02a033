// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "coreplace/errors.hpp"
#include "coreplace/model.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using coreplace::testing::chain;
using coreplace::testing::kA;
using coreplace::testing::servers;

TEST(Infrastructure, DiagonalIsAdjacentAndUnbounded) {
  const auto infra = Infrastructure::full_mesh(servers({2, 2, 2}), 10.0);
  for (ServerId s = 0; s < 3; ++s) {
    EXPECT_TRUE(infra.adjacent(s, s));
    EXPECT_TRUE(infra.link_capacity(s, s).is_unbounded());
    EXPECT_TRUE(infra.link_capacity(s, s).admits(1e300));
  }
  EXPECT_DOUBLE_EQ(infra.link_capacity(0, 1).value(), 10.0);
  EXPECT_THROW(infra.link_capacity(1, 1).value(), DomainError);
}

TEST(Infrastructure, RejectsAsymmetricAdjacency) {
  std::vector<std::vector<bool>> adj{{true, true}, {false, true}};
  std::vector<std::vector<double>> cap{{0, 1}, {0, 0}};
  EXPECT_THROW(Infrastructure(servers({1, 1}), adj, cap), ConfigError);
}

TEST(Infrastructure, RejectsCapacityOnMissingLink) {
  std::vector<std::vector<bool>> adj{{true, false}, {false, true}};
  std::vector<std::vector<double>> cap{{0, 5}, {0, 0}};
  EXPECT_THROW(Infrastructure(servers({1, 1}), adj, cap), ConfigError);
}

TEST(Infrastructure, RejectsNegativeCapacities) {
  EXPECT_THROW(Infrastructure::full_mesh(servers({1, -1}), 1.0), ConfigError);
  EXPECT_THROW(Infrastructure::full_mesh(servers({1, 1}), -1.0), ConfigError);
  EXPECT_THROW(LinkCapacity::finite(-0.5), ConfigError);
}

TEST(Infrastructure, PerServerOutgoingCapacity) {
  const std::vector<double> out{3.0, 7.0};
  const auto infra = Infrastructure::full_mesh(servers({1, 1}), out);
  EXPECT_DOUBLE_EQ(infra.link_capacity(0, 1).value(), 3.0);
  EXPECT_DOUBLE_EQ(infra.link_capacity(1, 0).value(), 7.0);
  EXPECT_DOUBLE_EQ(infra.total_capacity(Resource::Cpu), 2.0);
}

TEST(CpProcedure, RejectsSelfAndDuplicateEdges) {
  std::vector<MsSpec> ms{{0, 1, 1, 0, 1}, {1, 1, 1, 0, 1}};
  EXPECT_THROW(CpProcedure(0, ms, {{0, 0, kA, {}}}), ConfigError);
  EXPECT_THROW(CpProcedure(0, ms, {{0, 1, kA, {}}, {0, 1, kA, {}}}), ConfigError);
  EXPECT_THROW(CpProcedure(0, ms, {{0, 1, 0.0, {}}}), ConfigError);
  EXPECT_THROW(CpProcedure(0, ms, {{0, 2, kA, {}}}), ConfigError);
}

TEST(CpProcedure, RejectsZeroMaxLoad) {
  std::vector<MsSpec> ms{{0, 1, 1, 0, 0}};
  EXPECT_THROW(CpProcedure(0, ms, {}), ConfigError);
}

TEST(CpProcedure, EdgeLookup) {
  const auto p = chain(0, {kA, 2 * kA});
  ASSERT_NE(p.find_edge(1, 2), nullptr);
  EXPECT_EQ(p.find_edge(2, 1), nullptr);
  EXPECT_EQ(p.out_edges(0).size(), 1u);
  EXPECT_EQ(p.in_edges(0).size(), 0u);
  EXPECT_DOUBLE_EQ(p.output_time(*p.find_edge(0, 1), false), kA + 0.5e-3);
}

TEST(CpProcedure, EdgePenaltyOverride) {
  std::vector<MsSpec> ms{{0, 1, 1, 0.5e-3, 1}, {1, 1, 1, 0.5e-3, 1}};
  const CpProcedure p(0, ms, {{0, 1, kA, 2e-3}});
  EXPECT_DOUBLE_EQ(p.output_time(p.edges()[0], false), 3e-3);
  EXPECT_DOUBLE_EQ(p.output_time(p.edges()[0], true), kA);
}

TEST(ReplicaCounts, CeilingOfLoadOverMaxLoad) {
  const std::vector<CpProcedure> one{chain(0, {kA})};
  EXPECT_EQ(replica_counts(one, {{0, 500}}).replicas(0, 0), 500u);
  EXPECT_EQ(replica_counts(one, {{0, 0}}).replicas(0, 1), 0u);
  const std::vector<CpProcedure> fifty{chain(0, {kA}, 0.5e-3, 50)};
  EXPECT_EQ(replica_counts(fifty, {{0, 101}}).replicas(0, 0), 3u);
  EXPECT_EQ(replica_counts(fifty, {{0, 100}}).replicas(0, 0), 2u);
}

TEST(ReplicaCounts, MissingWorkloadIsConfigError) {
  const std::vector<CpProcedure> procs{chain(0, {kA}), chain(1, {kA})};
  EXPECT_THROW(replica_counts(procs, {{0, 3}}), ConfigError);
}

TEST(ReplicaCounts, MatchesRequestBinning) {
  // Independent count: fill bins of size l one request at a time.
  for (std::uint64_t l : {1u, 3u, 7u, 50u}) {
    const std::vector<CpProcedure> procs{chain(0, {kA}, 0.5e-3, l)};
    for (std::uint64_t u = 0; u <= 160; ++u) {
      std::uint64_t bins = 0, fill = l;
      for (std::uint64_t r = 0; r < u; ++r) {
        if (fill == l) {
          ++bins;
          fill = 0;
        }
        ++fill;
      }
      EXPECT_EQ(replica_counts(procs, {{0, u}}).replicas(0, 0), bins) << "l=" << l << " u=" << u;
    }
  }
}

TEST(InstanceTable, OrderAndDenseRoundTrip) {
  const std::vector<CpProcedure> procs{chain(3, {kA}), chain(1, {kA, kA})};
  ReplicaPlan plan;
  plan.set(3, {2, 1});
  plan.set(1, {1, 0, 2});
  const InstanceTable table(procs, plan);
  ASSERT_EQ(table.size(), 6u);
  EXPECT_EQ(table.key(0), (InstanceKey{3, 0, 0}));
  EXPECT_EQ(table.key(1), (InstanceKey{3, 0, 1}));
  EXPECT_EQ(table.key(3), (InstanceKey{1, 0, 0}));
  EXPECT_EQ(table.key(5), (InstanceKey{1, 2, 1}));
  EXPECT_EQ(table.find({1, 2, 0}).value(), 4u);
  EXPECT_FALSE(table.find({1, 1, 0}).has_value());

  const DenseAssignment dense{0, 1, 1, 0, 1, 0};
  const Assignment sparse = to_assignment(table, dense);
  EXPECT_EQ(to_dense(table, sparse), dense);
  Assignment missing = sparse;
  missing.erase(InstanceKey{3, 1, 0});
  EXPECT_THROW(to_dense(table, missing), DomainError);
}

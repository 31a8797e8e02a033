// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "coreplace/constraints.hpp"
#include "coreplace/exact/ilp_model.hpp"
#include "coreplace/flows.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"
#include "coreplace/scenario/random_graph.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using namespace coreplace::exact;
using namespace coreplace::testing;

TEST(Linearize, SingleInstanceStats) {
  const auto infra = mesh({1, 1});
  const std::vector<CpProcedure> procs{CpProcedure(0, {{0, 1, 1, kC, 1}}, {})};
  const auto model = linearize(infra, procs, plan_for(procs, 1));
  EXPECT_EQ(model_stats(model), (ModelStats{2, 5}));
  EXPECT_TRUE(model.objective.empty());
}

TEST(Linearize, ForcedSplitRowsAndObjective) {
  const auto infra = mesh({1, 1}, 5000.0);
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto model = linearize(infra, procs, plan_for(procs, 1));
  // 4 placements, 2 products (one per ordered server pair).
  std::size_t products = 0, flow_rows = 0, mccormick = 0;
  for (const auto& v : model.variables) products += v.kind == VarKind::Product;
  for (const auto& r : model.rows) {
    flow_rows += r.kind == RowKind::Flow;
    mccormick += r.kind == RowKind::ProductUpperFirst || r.kind == RowKind::ProductUpperSecond ||
                 r.kind == RowKind::ProductLower;
  }
  EXPECT_EQ(products, 2u);
  EXPECT_EQ(flow_rows, 2u);
  EXPECT_EQ(mccormick, 6u);
  EXPECT_EQ(model_stats(model), (ModelStats{6, 2 + 4 + 2 + 6}));
  ASSERT_EQ(model.objective.size(), 2u);
  for (const auto& t : model.objective) EXPECT_NEAR(t.coef, remote_rate(kA, kC), 1e-9);
}

TEST(Linearize, AdjacencyRowsOnlyForMissingLinks) {
  std::vector<std::vector<bool>> adj{{true, true, false}, {true, true, true}, {false, true, true}};
  std::vector<std::vector<double>> cap{{0, 1e6, 0}, {1e6, 0, 1e6}, {0, 1e6, 0}};
  const Infrastructure infra(servers({1, 1, 1}), adj, cap);
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto model = linearize(infra, procs, plan_for(procs, 1));
  std::size_t adjacency = 0;
  for (const auto& r : model.rows) {
    if (r.kind != RowKind::Adjacency) continue;
    ++adjacency;
    EXPECT_EQ(r.name, "adj_0_2");
    EXPECT_EQ(r.terms.size(), 2u);
    EXPECT_EQ(r.rhs, 0.0);
  }
  EXPECT_EQ(adjacency, 1u);
}

TEST(Linearize, McCormickRowsForceProduct) {
  const auto infra = mesh({1, 1}, 5000.0);
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  const auto model = linearize(infra, procs, plan_for(procs, 1));
  for (std::size_t y = 0; y < model.variables.size(); ++y) {
    const auto& v = model.variables[y];
    if (v.kind != VarKind::Product) continue;
    std::vector<const Row*> rows;
    for (const auto& r : model.rows) {
      if ((r.kind == RowKind::ProductUpperFirst || r.kind == RowKind::ProductUpperSecond ||
           r.kind == RowKind::ProductLower) &&
          std::any_of(r.terms.begin(), r.terms.end(), [&](const Term& t) { return t.var == y; })) {
        rows.push_back(&r);
      }
    }
    ASSERT_EQ(rows.size(), 3u);
    for (int x1 = 0; x1 <= 1; ++x1) {
      for (int x2 = 0; x2 <= 1; ++x2) {
        std::vector<int> admitted;
        for (int yv = 0; yv <= 1; ++yv) {
          std::vector<double> values(model.variables.size(), 0.0);
          values[v.first] = x1;
          values[v.second] = x2;
          values[y] = yv;
          bool ok = true;
          for (const Row* r : rows) ok &= row_satisfied(*r, values);
          if (ok) admitted.push_back(yv);
        }
        ASSERT_EQ(admitted.size(), 1u) << x1 << x2;
        EXPECT_EQ(admitted[0], x1 * x2);
      }
    }
  }
}

TEST(Linearize, IntegralPointsMatchFlowsAndConstraints) {
  const auto infra = mesh({2, 2}, 800.0);
  const std::vector<CpProcedure> procs{chain(0, {kA, 2 * kA})};
  const auto plan = plan_for(procs, 1);
  const auto model = linearize(infra, procs, plan);
  const InstanceTable table(procs, plan);
  for (ServerId a = 0; a < 2; ++a) {
    for (ServerId b = 0; b < 2; ++b) {
      for (ServerId c = 0; c < 2; ++c) {
        const DenseAssignment dense{a, b, c};
        std::vector<double> values(model.variables.size(), 0.0);
        for (std::size_t n = 0; n < 3; ++n) values[model.placement_var(n, dense[n])] = 1.0;
        for (std::size_t v = 0; v < model.variables.size(); ++v) {
          const auto& var = model.variables[v];
          if (var.kind == VarKind::Product) values[v] = values[var.first] * values[var.second];
        }
        double objective = 0.0;
        for (const auto& t : model.objective) objective += t.coef * values[t.var];
        const double psi = objective_psi(link_flows(infra, procs, plan, table, dense));
        EXPECT_NEAR(objective, psi, 1e-9);
        bool rows_ok = true;
        for (const auto& r : model.rows) rows_ok &= row_satisfied(r, values);
        EXPECT_EQ(rows_ok, check_constraints(infra, procs, plan, table, dense).all_pass());
      }
    }
  }
}

TEST(Linearize, LpWriterNamesAndSections) {
  const auto infra = mesh({1, 1}, 5000.0);
  const std::vector<CpProcedure> procs{chain(0, {kA})};
  std::ostringstream out;
  write_lp(linearize(infra, procs, plan_for(procs, 1)), out);
  const std::string lp = out.str();
  for (const char* needle : {"Minimize", "Subject To", "Binary", "End", "x_0_0_0_0", "x_0_1_0_1",
                             "y_0", "y_1", "assign_0:", "flow_0_1:", "<= 5000"}) {
    EXPECT_NE(lp.find(needle), std::string::npos) << needle;
  }
}

namespace {

ModelStats random_stats(std::size_t ms_count, double pi, std::uint64_t seed) {
  scenario::RandomGraphConfig g;
  g.ms_count = ms_count;
  g.edge_probability = pi;
  g.seed = seed;
  const std::vector<CpProcedure> procs{scenario::gen_random_procedure(g)};
  const auto plan = plan_for(procs, 1);
  scenario::FarmConfig f;
  f.seed = seed;
  const auto infra = scenario::gen_farm(scenario::farm_demand(procs, plan), ms_count, f);
  return model_stats(linearize(infra, procs, plan));
}

}  // namespace

TEST(ModelStats, DeterministicForSeed) {
  EXPECT_EQ(random_stats(8, 0.75, 42), random_stats(8, 0.75, 42));
}

TEST(ModelStats, GrowWithEdgeProbabilityAndSize) {
  double low = 0, high = 0, small = 0, large = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    low += static_cast<double>(random_stats(8, 0.25, seed).variables);
    high += static_cast<double>(random_stats(8, 0.75, seed).variables);
    small += static_cast<double>(random_stats(6, 0.75, seed).variables);
    large += static_cast<double>(random_stats(10, 0.75, seed).variables);
  }
  EXPECT_GT(high, low);
  EXPECT_GT(large, small);
}

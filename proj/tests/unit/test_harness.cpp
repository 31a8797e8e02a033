// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <stdexcept>

#include "coreplace/errors.hpp"
#include "coreplace/harness/arch_compare.hpp"
#include "coreplace/harness/config.hpp"
#include "coreplace/harness/cost_gap.hpp"
#include "coreplace/harness/csv.hpp"
#include "coreplace/harness/parallel.hpp"
#include "coreplace/harness/supported_load.hpp"
#include "coreplace/harness/utilization.hpp"
#include "coreplace/mm/mm.hpp"
#include "coreplace/scenario/aggregate.hpp"
#include "coreplace/scenario/fivegc.hpp"
#include "coreplace/scenario_io.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using namespace coreplace::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("coreplace_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Csv, FormatNumber) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(format_number(1e-3), "0.001");
  EXPECT_EQ(format_number(std::optional<double>{}), "");
  EXPECT_EQ(std::stod(format_number(2000.0 / 3.0)), 2000.0 / 3.0);
}

TEST(Csv, QuotingRoundTrip) {
  CsvTable t({"a", "b"});
  t.add_row({"plain", "has,comma"});
  t.add_row({"has \"quote\"", "line\nbreak"});
  EXPECT_THROW(t.add_row({"only one"}), DomainError);
  const auto rows = parse_csv(t.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(rows[1][1], "has,comma");
  EXPECT_EQ(rows[2][0], "has \"quote\"");
  EXPECT_EQ(rows[2][1], "line\nbreak");
}

TEST(Parallel, RunsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  EXPECT_GE(default_thread_count(), 1u);
}

TEST(Config, KindNames) {
  EXPECT_EQ(parse_experiment_kind("cost-gap"), ExperimentKind::CostGap);
  EXPECT_EQ(parse_experiment_kind("arch-compare"), ExperimentKind::ArchCompare);
  EXPECT_EQ(parse_experiment_kind("utilization"), ExperimentKind::Utilization);
  EXPECT_THROW(parse_experiment_kind("solve"), ConfigError);
  EXPECT_STREQ(to_string(ExperimentKind::CostGap), "cost-gap");
}

TEST(Config, CostGapParse) {
  const auto c = parse_cost_gap_config(R"({"kind": "cost-gap", "seed": 9, "iterations": 3,
      "ms_counts": [6], "edge_probabilities": [0.5], "homogeneity": ["non-homogeneous"]})");
  EXPECT_EQ(c.run.seed, 9u);
  EXPECT_EQ(c.run.iterations, 3u);
  EXPECT_EQ(c.ms_counts, (std::vector<std::size_t>{6}));
  EXPECT_EQ(c.edge_probabilities, (std::vector<double>{0.5}));
  EXPECT_EQ(c.homogeneity, (std::vector<scenario::Homogeneity>{scenario::Homogeneity::NonHomogeneous}));
  EXPECT_EQ(c.server_ratios, (std::vector<double>{0.5, 0.75}));
  EXPECT_THROW(parse_cost_gap_config(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_cost_gap_config(R"({"iterations": 0})"), ConfigError);
  EXPECT_THROW(parse_cost_gap_config(R"({"ms_counts": [11]})"), ConfigError);
  EXPECT_THROW(parse_cost_gap_config(R"({"edge_probabilities": [1.5]})"), ConfigError);
}

TEST(Config, ArchAndUtilizationParse) {
  const auto a = parse_arch_compare_config(
      R"({"server_counts": [10, 20], "loads": [5], "sizing_load": 7, "nf_threads": 2})");
  EXPECT_EQ(a.server_counts, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(a.sizing_load, std::optional<std::uint64_t>{7});
  EXPECT_EQ(a.nf_threads, 2u);
  EXPECT_EQ(a.grouping.size(), scenario::default_nf_grouping().size());
  const auto u = parse_utilization_config(R"({"u_max_target": 60, "load_step": 5})");
  EXPECT_EQ(u.u_max_target, 60u);
  EXPECT_EQ(u.load_step, 5u);
  EXPECT_EQ(u.server_count, 5u);
  EXPECT_THROW(parse_utilization_config(R"({"load_step": 0})"), ConfigError);
  EXPECT_THROW(parse_arch_compare_config(R"({"grouping_file": "missing.json"})", "/nonexistent"),
               ConfigError);
}

TEST(SupportedLoad, DescendingScan) {
  EXPECT_EQ(descending_scan(10, [](std::uint64_t u) { return u <= 7; }), 7u);
  EXPECT_EQ(descending_scan(10, [](std::uint64_t) { return false; }), 0u);
  EXPECT_EQ(descending_scan(0, [](std::uint64_t) { return true; }), 0u);
}

TEST(SupportedLoad, HugeServerSupportsCap) {
  const auto procs = scenario::gen_5gc_workload();
  const auto infra = coreplace::testing::mesh({1e9});
  const auto sl = supported_load(infra, procs, 40);
  EXPECT_EQ(sl.joint, 40u);
  ASSERT_EQ(sl.per_procedure.size(), 3u);
  for (const auto& [t, u] : sl.per_procedure) EXPECT_EQ(u, 40u);
}

TEST(SupportedLoad, TooSmallForLargestNode) {
  const auto procs = scenario::aggregate(scenario::gen_5gc_workload(), scenario::ProcedureBased{1});
  const auto infra = coreplace::testing::mesh({10, 10, 10, 10, 10});
  const auto sl = supported_load(infra, procs, 20, true);
  EXPECT_EQ(sl.joint, 0u);
  ASSERT_EQ(sl.feasible.size(), 21u);
  EXPECT_TRUE(sl.feasible[0]);
  for (std::size_t u = 1; u <= 20; ++u) EXPECT_FALSE(sl.feasible[u]);
}

TEST(SupportedLoad, PruningAgreesWithHeuristic) {
  const auto procs = scenario::gen_5gc_workload();
  const auto infra = scenario::size_farm_for_u_max(procs, 20, 12,
                                                   scenario::Homogeneity::NonHomogeneous, 3);
  for (std::uint64_t u = 0; u <= 30; ++u) {
    bool mapped = true;
    if (u > 0) {
      const auto plan = replica_counts(procs, uniform_workload(procs, u));
      mapped = mm::mm_map_all(infra, procs, plan).status == mm::MmStatus::Mapped;
    }
    EXPECT_EQ(heuristic_feasible(infra, procs, u), mapped) << u;
  }
}

TEST(SupportedLoad, StaircaseUnderThreads) {
  // One 50-thread node of footprint 50: capacity for two instances.
  const auto procs = scenario::aggregate({scenario::chain_procedure(0, 1, "one")},
                                         scenario::ProcedureBased{50});
  const auto infra = coreplace::testing::mesh({50, 50});
  EXPECT_EQ(supported_load(infra, procs, 500).joint, 100u);
}

namespace {

CostGapConfig small_cost_gap() {
  CostGapConfig c;
  c.run.iterations = 4;
  c.run.seed = 11;
  c.run.threads = 2;
  c.run.timings = false;
  c.ms_counts = {6, 7};
  c.server_ratios = {0.75};
  c.edge_probabilities = {0.75};
  c.homogeneity = {scenario::Homogeneity::Homogeneous, scenario::Homogeneity::NonHomogeneous};
  return c;
}

}  // namespace

TEST(CostGap, SmallRunRecordsAndCells) {
  const auto result = run_cost_gap(small_cost_gap());
  ASSERT_EQ(result.records.size(), 16u);
  ASSERT_EQ(result.cells.size(), 4u);
  for (const auto& r : result.records) {
    EXPECT_EQ(r.servers, r.ms_count == 6 ? 5u : 6u);
    if (r.mm_mapped) EXPECT_TRUE(r.mm_feasible);
    if (const auto g = r.gap()) EXPECT_GE(*g, -1e-9);
    if (r.exact_status == exact::SolveStatus::Optimal) EXPECT_GT(r.vars, 0u);
  }
  for (const auto& c : result.cells) {
    EXPECT_EQ(c.runs, 4u);
    EXPECT_EQ(c.exact_optimal + c.exact_infeasible + c.exact_timeouts, c.runs);
    if (c.compared > 0) {
      EXPECT_LE(*c.min_gap, *c.mean_gap + 1e-9);
      EXPECT_LE(*c.mean_gap, *c.max_gap + 1e-9);
    }
  }
}

TEST(CostGap, SeedDeterministicOutput) {
  const auto dir_a = scratch_dir("cost_gap_a");
  const auto dir_b = scratch_dir("cost_gap_b");
  auto config = small_cost_gap();
  const auto a = write_cost_gap(run_cost_gap(config), dir_a, false);
  config.run.threads = 1;
  const auto b = write_cost_gap(run_cost_gap(config), dir_b, false);
  ASSERT_EQ(a.size(), 3u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].filename(), b[k].filename());
    EXPECT_EQ(read_text_file(a[k]), read_text_file(b[k]));
  }
  const auto rows = parse_csv(read_text_file(dir_a / "cost_gap_homogeneous.csv"));
  ASSERT_EQ(rows.size(), 9u);
  const std::vector<std::string> expected{"m", "sigma", "pi", "seed", "psi_mm", "psi_exact",
                                          "gap", "t_mm_s", "t_exact_s", "vars", "cons"};
  EXPECT_TRUE(std::equal(expected.begin(), expected.end(), rows[0].begin()));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    EXPECT_EQ(rows[r][7], "");  // timings disabled
    EXPECT_EQ(rows[r][8], "");
  }
}

TEST(CostGap, SummarizeExcludesTimeouts) {
  CostGapRecord ok;
  ok.mm_mapped = true;
  ok.psi_mm = 10.0;
  ok.exact_status = exact::SolveStatus::Optimal;
  ok.psi_exact = 4.0;
  CostGapRecord timeout = ok;
  timeout.exact_status = exact::SolveStatus::TimeLimit;
  timeout.psi_exact.reset();
  timeout.psi_incumbent = 5.0;
  const std::vector<CostGapRecord> records{ok, timeout};
  const auto cell = summarize_cell(records);
  EXPECT_EQ(cell.runs, 2u);
  EXPECT_EQ(cell.exact_timeouts, 1u);
  EXPECT_EQ(cell.compared, 1u);
  EXPECT_DOUBLE_EQ(*cell.mean_gap, 6.0);
}

TEST(Utilization, DemandPercentages) {
  const std::vector<CpProcedure> procs{scenario::chain_procedure(0, 5, "five")};
  const auto infra = coreplace::testing::mesh({25, 25});
  const auto [cpu, mem] = demand_utilization(infra, procs, 4);
  EXPECT_DOUBLE_EQ(cpu, 40.0);
  EXPECT_DOUBLE_EQ(mem, 40.0);
  EXPECT_EQ(demand_utilization(infra, procs, 0).first, 0.0);
}

TEST(Utilization, SmallRunOrderingAndStaircase) {
  UtilizationConfig c;
  c.u_max_target = 60;
  c.load_step = 5;
  c.nf_threads = 5;
  c.procedure_threads = 10;
  c.run.threads = 2;
  const auto result = run_utilization(c);
  EXPECT_EQ(result.u_max, 60u);
  std::map<std::string, double> last;
  std::map<std::uint64_t, std::map<std::string, double>> by_load;
  for (const auto& r : result.records) {
    EXPECT_LE(r.cpu_pct, 100.0 + 1e-9);
    EXPECT_GE(r.cpu_pct, last[r.architecture] - 1e-12);
    last[r.architecture] = r.cpu_pct;
    by_load[r.load][r.architecture] = r.cpu_pct;
    if (r.load == 0) EXPECT_EQ(r.cpu_pct, 0.0);
    ASSERT_TRUE(r.placed.has_value());
  }
  for (const auto& [load, m] : by_load) {
    EXPECT_LE(m.at("ms"), m.at("nf") + 1e-9) << load;
    EXPECT_LE(m.at("nf"), m.at("procedure") + 1e-9) << load;
  }
  const auto dir = scratch_dir("utilization");
  const auto paths = write_utilization(result, dir);
  ASSERT_EQ(paths.size(), 1u);
  const auto rows = parse_csv(read_text_file(paths[0]));
  EXPECT_EQ(rows[0], utilization_columns());
  EXPECT_EQ(rows.size(), result.records.size() + 1);
}

TEST(ArchCompare, SmallSweep) {
  ArchCompareConfig c;
  c.server_counts = {10, 40};
  c.loads = {10};
  c.run.threads = 2;
  const auto result = run_arch_compare(c);
  ASSERT_EQ(result.records.size(), 6u);
  for (const auto& r : result.records) {
    if (r.architecture == "ms") EXPECT_EQ(r.supported.joint, 10u);
    if (r.architecture == "procedure" && r.psi_mm) EXPECT_EQ(*r.psi_mm, 0.0);
    EXPECT_LE(r.supported.joint, 10u);
  }
  const auto dir = scratch_dir("arch");
  const auto paths = write_arch_compare(result, dir);
  const auto rows = parse_csv(read_text_file(paths[0]));
  EXPECT_EQ(rows[0], arch_compare_columns(3));
  EXPECT_EQ(rows.size(), 7u);
}

TEST(BundledFiles, GroupingMatchesDefault) {
  const auto loaded = scenario::load_nf_grouping(fs::path(COREPLACE_DATA_DIR) / "nf_grouping_illustrative.json");
  const auto expected = scenario::default_nf_grouping();
  ASSERT_EQ(loaded.size(), expected.size());
  for (std::size_t k = 0; k < loaded.size(); ++k) {
    EXPECT_EQ(loaded[k].name, expected[k].name);
    EXPECT_EQ(loaded[k].procedure, expected[k].procedure);
    EXPECT_EQ(loaded[k].ms_ids, expected[k].ms_ids);
  }
}

TEST(BundledFiles, ConfigsParse) {
  const fs::path dir = COREPLACE_CONFIG_DIR;
  EXPECT_NO_THROW(parse_cost_gap_config(read_text_file(dir / "cost_gap.json")));
  EXPECT_NO_THROW(parse_cost_gap_config(read_text_file(dir / "cost_gap_ci.json")));
  EXPECT_NO_THROW(parse_arch_compare_config(read_text_file(dir / "arch_compare.json"), dir));
  EXPECT_NO_THROW(parse_arch_compare_config(read_text_file(dir / "arch_compare_ci.json"), dir));
  EXPECT_NO_THROW(parse_utilization_config(read_text_file(dir / "utilization.json"), dir));
}

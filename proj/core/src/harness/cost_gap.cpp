// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <tuple>

#include "coreplace/constraints.hpp"
#include "coreplace/flows.hpp"
#include "coreplace/harness/cost_gap.hpp"
#include "coreplace/harness/csv.hpp"
#include "coreplace/harness/parallel.hpp"
#include "coreplace/mm/mm.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/random_graph.hpp"

namespace coreplace::harness {

std::optional<double> CostGapRecord::gap() const {
  if (!psi_mm || !psi_exact) return std::nullopt;
  return *psi_mm - *psi_exact;
}

namespace {

std::uint64_t scaled(double v) { return static_cast<std::uint64_t>(std::llround(v * 1e6)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t cost_gap_seed(const CostGapConfig& config, scenario::Homogeneity h,
                            std::size_t ms_count, double ratio, double probability,
                            std::size_t iteration) {
  return derive_seed(config.run.seed, {static_cast<std::uint64_t>(h), ms_count, scaled(ratio),
                                       scaled(probability), iteration});
}

CostGapRecord run_cost_gap_instance(const CostGapConfig& config, scenario::Homogeneity h,
                                    std::size_t ms_count, double ratio, double probability,
                                    std::uint64_t seed) {
  CostGapRecord rec;
  rec.homogeneity = h;
  rec.ms_count = ms_count;
  rec.server_ratio = ratio;
  rec.edge_probability = probability;
  rec.seed = seed;

  scenario::RandomGraphConfig g;
  g.ms_count = ms_count;
  g.edge_probability = probability;
  g.base_time = config.base_time;
  g.remote_penalty = config.remote_penalty;
  g.cpu_footprint = config.cpu_footprint;
  g.mem_footprint = config.mem_footprint;
  g.max_load = config.max_load;
  g.seed = seed;
  const std::vector<CpProcedure> procs{scenario::gen_random_procedure(g)};
  rec.edges = procs[0].edges().size();
  const ReplicaPlan plan = replica_counts(procs, uniform_workload(procs, config.requests));

  scenario::FarmConfig farm;
  farm.server_ratio = ratio;
  farm.homogeneity = h;
  farm.seed = mix64(seed);
  const Infrastructure infra = scenario::gen_farm(scenario::farm_demand(procs, plan), ms_count, farm);
  rec.servers = infra.server_count();

  auto start = std::chrono::steady_clock::now();
  const mm::MmOutcome mm_out = mm::mm_map_all(infra, procs, plan);
  rec.t_mm_s = seconds_since(start);
  if (mm_out.status == mm::MmStatus::Mapped) {
    rec.mm_mapped = true;
    rec.mm_feasible = check_constraints(infra, procs, plan, mm_out.assignment).all_pass();
    rec.psi_mm = objective_psi(link_flows(infra, procs, plan, mm_out.assignment));
  }

  start = std::chrono::steady_clock::now();
  const exact::IlpModel model = exact::linearize(infra, procs, plan);
  const auto stats = exact::model_stats(model);
  rec.vars = stats.variables;
  rec.cons = stats.constraints;
  const exact::SolveOutcome ex = exact::solve_bnb(model, config.run.time_limit_s);
  rec.t_exact_s = seconds_since(start);
  rec.exact_status = ex.status;
  rec.nodes = ex.nodes;
  if (ex.status == exact::SolveStatus::Optimal) {
    rec.psi_exact = ex.psi;
  } else if (ex.status == exact::SolveStatus::TimeLimit && ex.assignment) {
    rec.psi_incumbent = ex.psi;
  }
  return rec;
}

CostGapCell summarize_cell(std::span<const CostGapRecord> records) {
  CostGapCell cell;
  if (records.empty()) return cell;
  cell.homogeneity = records.front().homogeneity;
  cell.ms_count = records.front().ms_count;
  cell.server_ratio = records.front().server_ratio;
  cell.edge_probability = records.front().edge_probability;
  double gap_sum = 0.0;
  for (const auto& r : records) {
    ++cell.runs;
    if (r.mm_mapped) ++cell.mm_mapped;
    switch (r.exact_status) {
      case exact::SolveStatus::Optimal:
        ++cell.exact_optimal;
        break;
      case exact::SolveStatus::Infeasible:
        ++cell.exact_infeasible;
        break;
      case exact::SolveStatus::TimeLimit:
        ++cell.exact_timeouts;
        break;
    }
    cell.mean_vars += static_cast<double>(r.vars);
    cell.mean_cons += static_cast<double>(r.cons);
    cell.mean_t_mm_s += r.t_mm_s;
    cell.mean_t_exact_s += r.t_exact_s;
    if (const auto g = r.gap()) {
      ++cell.compared;
      gap_sum += *g;
      cell.min_gap = cell.min_gap ? std::min(*cell.min_gap, *g) : *g;
      cell.max_gap = cell.max_gap ? std::max(*cell.max_gap, *g) : *g;
    }
  }
  const double n = static_cast<double>(cell.runs);
  cell.mean_vars /= n;
  cell.mean_cons /= n;
  cell.mean_t_mm_s /= n;
  cell.mean_t_exact_s /= n;
  if (cell.compared > 0) cell.mean_gap = gap_sum / static_cast<double>(cell.compared);
  return cell;
}

CostGapResult run_cost_gap(const CostGapConfig& config) {
  validate(config);
  struct Task {
    std::size_t cell;
    scenario::Homogeneity h;
    std::size_t m;
    double ratio, probability;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  std::size_t cells = 0;
  for (auto h : config.homogeneity) {
    for (auto m : config.ms_counts) {
      for (double ratio : config.server_ratios) {
        for (double p : config.edge_probabilities) {
          for (std::size_t k = 0; k < config.run.iterations; ++k) {
            tasks.push_back({cells, h, m, ratio, p, cost_gap_seed(config, h, m, ratio, p, k)});
          }
          ++cells;
        }
      }
    }
  }
  std::vector<CostGapRecord> records(tasks.size());
  parallel_for(tasks.size(), config.run.threads, [&](std::size_t n) {
    const auto& t = tasks[n];
    records[n] = run_cost_gap_instance(config, t.h, t.m, t.ratio, t.probability, t.seed);
  });

  CostGapResult result;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t end = begin;
    while (end < tasks.size() && tasks[end].cell == c) ++end;
    std::stable_sort(records.begin() + static_cast<std::ptrdiff_t>(begin),
                     records.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const CostGapRecord& a, const CostGapRecord& b) { return a.seed < b.seed; });
    result.cells.push_back(summarize_cell(
        std::span<const CostGapRecord>(records.data() + begin, end - begin)));
    begin = end;
  }
  result.records = std::move(records);
  return result;
}

std::vector<std::string> cost_gap_columns() {
  return {"m",         "sigma",     "pi",        "seed",        "psi_mm",
          "psi_exact", "gap",       "t_mm_s",    "t_exact_s",   "vars",
          "cons",      "servers",   "edges",     "mm_status",   "mm_feasible",
          "exact_status", "psi_exact_incumbent", "nodes"};
}

std::vector<std::string> cost_gap_summary_columns() {
  return {"homogeneity", "m",          "sigma",       "pi",
          "runs",        "mm_mapped",  "exact_optimal", "exact_infeasible",
          "exact_timeouts", "compared", "mean_gap",   "min_gap",
          "max_gap",     "mean_gap_pdu_per_ms", "mean_vars", "mean_cons",
          "mean_t_mm_s", "mean_t_exact_s"};
}

std::vector<std::filesystem::path> write_cost_gap(const CostGapResult& result,
                                                  const std::filesystem::path& out_dir,
                                                  bool timings) {
  std::filesystem::create_directories(out_dir);
  auto timing = [&](double v) { return timings ? format_number(v) : std::string{}; };
  auto count = [](std::size_t v) { return std::to_string(v); };

  std::map<scenario::Homogeneity, CsvTable> per_mode;
  for (const auto& r : result.records) {
    auto it = per_mode.try_emplace(r.homogeneity, cost_gap_columns()).first;
    it->second.add_row({count(r.ms_count), format_number(r.server_ratio),
                        format_number(r.edge_probability), std::to_string(r.seed),
                        format_number(r.psi_mm), format_number(r.psi_exact),
                        format_number(r.gap()), timing(r.t_mm_s), timing(r.t_exact_s),
                        count(r.vars), count(r.cons), count(r.servers), count(r.edges),
                        r.mm_mapped ? "mapped" : "no_solution", r.mm_feasible ? "1" : "0",
                        exact::to_string(r.exact_status), format_number(r.psi_incumbent),
                        std::to_string(r.nodes)});
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [mode, table] : per_mode) {
    auto path = out_dir / (std::string("cost_gap_") + scenario::to_string(mode) + ".csv");
    table.write(path);
    written.push_back(path);
  }

  CsvTable summary(cost_gap_summary_columns());
  for (const auto& c : result.cells) {
    std::optional<double> per_ms;
    if (c.mean_gap) per_ms = *c.mean_gap / 1000.0;
    summary.add_row({scenario::to_string(c.homogeneity), count(c.ms_count),
                     format_number(c.server_ratio), format_number(c.edge_probability),
                     count(c.runs), count(c.mm_mapped), count(c.exact_optimal),
                     count(c.exact_infeasible), count(c.exact_timeouts), count(c.compared),
                     format_number(c.mean_gap), format_number(c.min_gap),
                     format_number(c.max_gap), format_number(per_ms),
                     format_number(c.mean_vars), format_number(c.mean_cons),
                     timing(c.mean_t_mm_s), timing(c.mean_t_exact_s)});
  }
  auto path = out_dir / "cost_gap_summary.csv";
  summary.write(path);
  written.push_back(path);
  return written;
}

}  // namespace coreplace::harness

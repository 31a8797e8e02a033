// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "coreplace/constraints.hpp"
#include "coreplace/errors.hpp"
#include "coreplace/exact/ilp_model.hpp"
#include "coreplace/exact/solver.hpp"
#include "coreplace/harness/arch_compare.hpp"
#include "coreplace/harness/config.hpp"
#include "coreplace/harness/cost_gap.hpp"
#include "coreplace/harness/utilization.hpp"
#include "coreplace/mm/mm.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"
#include "coreplace/scenario/fivegc.hpp"
#include "coreplace/scenario/random_graph.hpp"
#include "coreplace/scenario_io.hpp"

namespace coreplace::cli {

namespace {

struct SolveArgs {
  std::string scenario, solver = "mm", out, lp, trace;
  double time_limit_s = exact::kDefaultTimeLimitSeconds;
};

struct ValidateArgs {
  std::string scenario, assignment;
};

struct GenerateArgs {
  std::string kind, out;
  std::uint64_t seed = 1;
  std::size_t ms = 6;
  double pi = 0.75;
  double sigma = 0.75;
  std::string homogeneity = "homogeneous";
  std::uint64_t requests = 0;  // 0 = kind default
  std::size_t servers = 0;     // 0 = kind default
};

struct ExperimentArgs {
  std::string kind, config, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  std::optional<double> time_limit_s;
  std::optional<std::size_t> threads;
  bool no_timings = false;
};

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario sc = load_scenario(a.scenario);
  const ReplicaPlan plan = replica_counts(sc.procedures, sc.workload);

  std::optional<Assignment> assignment;
  nlohmann::json meta;
  meta["solver"] = a.solver;
  if (a.solver == "mm") {
    std::ofstream trace_file;
    mm::MmOptions options;
    if (!a.trace.empty()) {
      trace_file.open(a.trace);
      if (!trace_file) throw ConfigError("cannot open trace file " + a.trace);
      options.trace = &trace_file;
    }
    auto outcome = mm::mm_map_all(sc.infra, sc.procedures, plan, options);
    meta["status"] = outcome.status == mm::MmStatus::Mapped ? "mapped" : "no_solution";
    if (outcome.status == mm::MmStatus::Mapped) {
      assignment = std::move(outcome.assignment);
    } else {
      err << "no solution: " << mm::to_string(outcome.failure) << " in procedure "
          << outcome.failed_procedure.value_or(0) << '\n';
    }
  } else if (a.solver == "exact" || a.solver == "oracle") {
    exact::SolveOutcome outcome;
    if (a.solver == "exact") {
      const auto model = exact::linearize(sc.infra, sc.procedures, plan);
      if (!a.lp.empty()) {
        std::ofstream lp(a.lp);
        if (!lp) throw ConfigError("cannot open LP file " + a.lp);
        exact::write_lp(model, lp);
      }
      const auto stats = exact::model_stats(model);
      meta["vars"] = stats.variables;
      meta["cons"] = stats.constraints;
      outcome = exact::solve_bnb(model, a.time_limit_s);
    } else {
      outcome = exact::brute_force_oracle(sc.infra, sc.procedures, plan);
    }
    meta["status"] = exact::to_string(outcome.status);
    meta["nodes"] = outcome.nodes;
    if (outcome.assignment) {
      assignment = std::move(outcome.assignment);
    } else {
      err << "no solution: " << exact::to_string(outcome.status) << '\n';
    }
  } else {
    err << "unknown solver '" << a.solver << "'\n";
    return kExitUsage;
  }
  if (!assignment) return kExitInfeasible;

  auto report = nlohmann::json::parse(assignment_report_json(sc, plan, *assignment));
  report["solver"] = meta;
  const std::string text = report.dump(2) + "\n";
  if (a.out.empty() || a.out == "-") {
    out << text;
  } else {
    write_text_file(a.out, text);
  }
  out << "psi " << report.at("psi").get<double>() << '\n';
  return kExitOk;
}

int run_validate(const ValidateArgs& a, std::ostream& out, std::ostream&) {
  const Scenario sc = load_scenario(a.scenario);
  const ReplicaPlan plan = replica_counts(sc.procedures, sc.workload);
  const Assignment assignment = load_assignment(a.assignment);
  const ConstraintReport report = check_constraints(sc.infra, sc.procedures, plan, assignment);
  out << report.summary();
  return report.all_pass() ? kExitOk : kExitInfeasible;
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
  const auto homogeneity = scenario::parse_homogeneity(a.homogeneity);
  std::vector<CpProcedure> procs;
  std::optional<Infrastructure> infra;
  std::uint64_t requests = a.requests;
  if (a.kind == "random") {
    scenario::RandomGraphConfig g;
    g.ms_count = a.ms;
    g.edge_probability = a.pi;
    g.seed = a.seed;
    procs.push_back(scenario::gen_random_procedure(g));
    if (requests == 0) requests = 1;
    const ReplicaPlan plan = replica_counts(procs, uniform_workload(procs, requests));
    scenario::FarmConfig farm;
    farm.server_ratio = a.sigma;
    farm.homogeneity = homogeneity;
    farm.seed = mix64(a.seed);
    if (a.servers > 0) farm.server_count = a.servers;
    infra = scenario::gen_farm(scenario::farm_demand(procs, plan), a.ms, farm);
  } else if (a.kind == "5gc") {
    procs = scenario::gen_5gc_workload();
    if (requests == 0) requests = 500;
    infra = scenario::size_farm_for_u_max(procs, requests, a.servers > 0 ? a.servers : 100,
                                          homogeneity, a.seed);
  } else {
    throw ConfigError("unknown generate kind '" + a.kind + "'");
  }
  Scenario sc{std::move(*infra), procs, uniform_workload(procs, requests)};
  const std::string text = scenario_to_json(sc);
  if (a.out.empty() || a.out == "-") {
    out << text;
  } else {
    write_text_file(a.out, text);
  }
  return kExitOk;
}

void apply_overrides(const ExperimentArgs& a, harness::RunOptions& run) {
  if (a.seed) run.seed = *a.seed;
  if (a.iterations) run.iterations = *a.iterations;
  if (a.time_limit_s) run.time_limit_s = *a.time_limit_s;
  if (a.threads) run.threads = *a.threads;
  if (a.no_timings) run.timings = false;
  harness::validate(run);
}

int run_experiment(const ExperimentArgs& a, std::ostream& out) {
  const auto kind = harness::parse_experiment_kind(a.kind);
  const std::filesystem::path out_dir =
      a.out_dir.empty() ? harness::default_output_dir() : std::filesystem::path(a.out_dir);
  const std::string text = a.config.empty() ? std::string("{}") : read_text_file(a.config);
  const std::filesystem::path base =
      a.config.empty() ? std::filesystem::path{} : std::filesystem::path(a.config).parent_path();

  std::vector<std::filesystem::path> written;
  switch (kind) {
    case harness::ExperimentKind::CostGap: {
      auto c = harness::parse_cost_gap_config(text);
      apply_overrides(a, c.run);
      written = harness::write_cost_gap(harness::run_cost_gap(c), out_dir, c.run.timings);
      break;
    }
    case harness::ExperimentKind::ArchCompare: {
      auto c = harness::parse_arch_compare_config(text, base);
      apply_overrides(a, c.run);
      written = harness::write_arch_compare(harness::run_arch_compare(c), out_dir);
      break;
    }
    case harness::ExperimentKind::Utilization: {
      auto c = harness::parse_utilization_config(text, base);
      apply_overrides(a, c.run);
      written = harness::write_utilization(harness::run_utilization(c), out_dir);
      break;
    }
  }
  for (const auto& p : written) out << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Microservice placement for control-plane procedures", "coreplace"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Place a scenario with one solver");
  s->add_option("--scenario", solve.scenario, "Scenario JSON")->required();
  s->add_option("--solver", solve.solver, "mm, exact or oracle")
      ->check(CLI::IsMember({"mm", "exact", "oracle"}));
  s->add_option("--out", solve.out, "Assignment report path, - for stdout");
  s->add_option("--time-limit-s", solve.time_limit_s, "Exact solver time limit");
  s->add_option("--lp", solve.lp, "Also write the linearized model in LP format");
  s->add_option("--trace", solve.trace, "Write heuristic steps as JSON lines");

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check an assignment against a scenario");
  v->add_option("--scenario", validate.scenario, "Scenario JSON")->required();
  v->add_option("--assignment", validate.assignment, "Assignment or report JSON")->required();

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "Write a generated scenario");
  g->add_option("--kind", generate.kind, "random or 5gc")
      ->required()
      ->check(CLI::IsMember({"random", "5gc"}));
  g->add_option("--out", generate.out, "Scenario path, - for stdout");
  g->add_option("--seed", generate.seed, "Generator seed");
  g->add_option("--ms", generate.ms, "MS count (random)");
  g->add_option("--pi", generate.pi, "Edge probability (random)");
  g->add_option("--sigma", generate.sigma, "Servers per MS (random)");
  g->add_option("--homogeneity", generate.homogeneity, "homogeneous or non-homogeneous");
  g->add_option("--requests", generate.requests, "Requests per procedure");
  g->add_option("--servers", generate.servers, "Server count");

  ExperimentArgs experiment;
  auto* e = app.add_subcommand("experiment", "Run a batch experiment and write CSV files");
  e->add_option("--kind", experiment.kind, "cost-gap, arch-compare or utilization")
      ->required()
      ->check(CLI::IsMember({"cost-gap", "arch-compare", "utilization"}));
  e->add_option("--config", experiment.config, "Experiment JSON config");
  e->add_option("--out-dir", experiment.out_dir, "Output directory");
  e->add_option("--seed", experiment.seed, "Base seed");
  e->add_option("--iterations", experiment.iterations, "Monte Carlo iterations per cell");
  e->add_option("--time-limit-s", experiment.time_limit_s, "Exact solver time limit");
  e->add_option("--threads", experiment.threads, "Worker threads, 0 for all cores");
  e->add_flag("--no-timings", experiment.no_timings, "Leave timing columns empty");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s->parsed()) return run_solve(solve, out, err);
    if (v->parsed()) return run_validate(validate, out, err);
    if (g->parsed()) return run_generate(generate, out);
    return run_experiment(experiment, out);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const SearchSpaceError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace coreplace::cli

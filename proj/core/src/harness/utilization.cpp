// SPDX-License-Identifier: Apache-2.0
#include "coreplace/harness/csv.hpp"
#include "coreplace/harness/parallel.hpp"
#include "coreplace/harness/utilization.hpp"
#include "coreplace/mm/mm.hpp"
#include "coreplace/scenario/aggregate.hpp"
#include "coreplace/scenario/farm.hpp"

namespace coreplace::harness {

std::pair<double, double> demand_utilization(const Infrastructure& infra,
                                             std::span<const CpProcedure> procedures,
                                             std::uint64_t load) {
  const ReplicaPlan plan = replica_counts(procedures, uniform_workload(procedures, load));
  double cpu = 0.0, mem = 0.0;
  for (const auto& p : procedures) {
    for (const auto& m : p.ms()) {
      const auto n = static_cast<double>(plan.replicas(p.id(), m.id));
      cpu += n * m.cpu_footprint;
      mem += n * m.mem_footprint;
    }
  }
  const double total_cpu = infra.total_capacity(Resource::Cpu);
  const double total_mem = infra.total_capacity(Resource::Mem);
  return {total_cpu > 0.0 ? 100.0 * cpu / total_cpu : 0.0,
          total_mem > 0.0 ? 100.0 * mem / total_mem : 0.0};
}

UtilizationResult run_utilization(const UtilizationConfig& config) {
  validate(config);
  const std::vector<CpProcedure> workload = scenario::gen_5gc_workload();
  const Infrastructure infra = scenario::size_farm_for_u_max(
      workload, config.u_max_target, config.server_count, config.homogeneity, config.run.seed);

  UtilizationResult result;
  result.u_max = scenario::u_max(infra, workload);
  result.total_cpu = infra.total_capacity(Resource::Cpu);
  result.total_mem = infra.total_capacity(Resource::Mem);

  const std::vector<scenario::ArchitectureModel> models{
      scenario::MsBased{}, scenario::NfBased{config.grouping, config.nf_threads},
      scenario::ProcedureBased{config.procedure_threads}};
  std::vector<std::vector<CpProcedure>> archs;
  for (const auto& m : models) archs.push_back(scenario::aggregate(workload, m));

  std::vector<std::uint64_t> loads;
  for (std::uint64_t u = 0; u <= result.u_max; u += config.load_step) loads.push_back(u);
  if (loads.back() != result.u_max) loads.push_back(result.u_max);

  result.records.resize(loads.size() * models.size());
  parallel_for(result.records.size(), config.run.threads, [&](std::size_t n) {
    const std::uint64_t load = loads[n / models.size()];
    const std::size_t a = n % models.size();
    const auto& procs = archs[a];
    UtilizationRecord rec;
    rec.load = load;
    rec.architecture = scenario::architecture_name(models[a]);
    std::tie(rec.cpu_pct, rec.mem_pct) = demand_utilization(infra, procs, load);
    const ReplicaPlan plan = replica_counts(procs, uniform_workload(procs, load));
    rec.instances = plan.total_instances();
    if (config.check_placement) {
      rec.placed = mm::mm_map_all(infra, procs, plan).status == mm::MmStatus::Mapped;
    }
    result.records[n] = std::move(rec);
  });
  return result;
}

std::vector<std::string> utilization_columns() {
  return {"load", "architecture", "cpu_pct", "mem_pct", "instances", "placed", "u_max"};
}

std::vector<std::filesystem::path> write_utilization(const UtilizationResult& result,
                                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  CsvTable table(utilization_columns());
  for (const auto& r : result.records) {
    table.add_row({std::to_string(r.load), r.architecture, format_number(r.cpu_pct),
                   format_number(r.mem_pct), std::to_string(r.instances),
                   r.placed ? (*r.placed ? "1" : "0") : "", std::to_string(result.u_max)});
  }
  std::vector<std::filesystem::path> written{out_dir / "utilization.csv"};
  table.write(written.back());
  return written;
}

}  // namespace coreplace::harness

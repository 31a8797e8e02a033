// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <memory>

#include "coreplace/flows.hpp"
#include "coreplace/harness/arch_compare.hpp"
#include "coreplace/harness/csv.hpp"
#include "coreplace/harness/parallel.hpp"
#include "coreplace/mm/mm.hpp"
#include "coreplace/rng.hpp"
#include "coreplace/scenario/farm.hpp"

namespace coreplace::harness {

std::vector<scenario::ArchitectureModel> arch_compare_models(const ArchCompareConfig& config) {
  return {scenario::MsBased{}, scenario::NfBased{config.grouping, config.nf_threads},
          scenario::ProcedureBased{config.procedure_threads}};
}

namespace {

std::optional<double> psi_at(const Infrastructure& infra, const std::vector<CpProcedure>& procs,
                             std::uint64_t load) {
  const ReplicaPlan plan = replica_counts(procs, uniform_workload(procs, load));
  const auto out = mm::mm_map_all(infra, procs, plan);
  if (out.status != mm::MmStatus::Mapped) return std::nullopt;
  return objective_psi(link_flows(infra, procs, plan, out.assignment));
}

// Heuristic verdicts per load, shared by the scans of one architecture.
class FeasibilityMemo {
 public:
  FeasibilityMemo(const Infrastructure& infra, std::span<const CpProcedure> procs)
      : infra_(infra), procs_(procs) {}
  bool operator()(std::uint64_t u) {
    auto it = known_.find(u);
    if (it == known_.end()) it = known_.emplace(u, heuristic_feasible(infra_, procs_, u)).first;
    return it->second;
  }

 private:
  const Infrastructure& infra_;
  std::span<const CpProcedure> procs_;
  std::map<std::uint64_t, bool> known_;
};

std::vector<ArchCompareRecord> run_servers(const ArchCompareConfig& config,
                                           const std::vector<CpProcedure>& workload,
                                           std::size_t servers) {
  std::vector<std::uint64_t> loads = config.loads;
  std::sort(loads.begin(), loads.end());
  loads.erase(std::unique(loads.begin(), loads.end()), loads.end());
  const auto models = arch_compare_models(config);
  std::vector<std::vector<CpProcedure>> archs;
  for (const auto& m : models) archs.push_back(scenario::aggregate(workload, m));

  // One farm per sizing load; verdicts are shared by loads using the same farm.
  struct FarmState {
    Infrastructure infra;
    std::vector<FeasibilityMemo> joint;
    std::vector<std::vector<FeasibilityMemo>> alone;
  };
  std::map<std::uint64_t, std::unique_ptr<FarmState>> farms;
  auto farm_for = [&](std::uint64_t sizing) -> FarmState& {
    auto& slot = farms[sizing];
    if (!slot) {
      slot = std::make_unique<FarmState>(FarmState{
          scenario::size_farm_for_u_max(workload, sizing, servers, config.homogeneity,
                                        derive_seed(config.run.seed, {servers, sizing})),
          {}, {}});
      for (const auto& procs : archs) {
        slot->joint.emplace_back(slot->infra, procs);
        slot->alone.emplace_back();
        for (const auto& p : procs) {
          slot->alone.back().emplace_back(slot->infra, std::span<const CpProcedure>(&p, 1));
        }
      }
    }
    return *slot;
  };

  std::vector<ArchCompareRecord> out;
  for (std::size_t a = 0; a < models.size(); ++a) {
    const auto& procs = archs[a];
    double max_node = 0.0;
    for (const auto& p : procs) {
      for (const auto& m : p.ms()) max_node = std::max(max_node, m.cpu_footprint);
    }
    for (std::uint64_t load : loads) {
      FarmState& farm = farm_for(config.sizing_load.value_or(load));
      const Infrastructure& infra = farm.infra;
      ArchCompareRecord rec;
      rec.servers = servers;
      rec.architecture = scenario::architecture_name(models[a]);
      rec.load = load;
      rec.min_server_cpu = infra.servers().front().cpu_capacity;
      for (const auto& s : infra.servers()) {
        rec.min_server_cpu = std::min(rec.min_server_cpu, s.cpu_capacity);
        rec.max_server_cpu = std::max(rec.max_server_cpu, s.cpu_capacity);
      }
      rec.max_node_cpu = max_node;
      auto& joint = farm.joint[a];
      rec.supported.joint = descending_scan(load, std::ref(joint));
      for (std::size_t k = 0; k < procs.size(); ++k) {
        rec.supported.per_procedure.emplace_back(
            procs[k].id(), descending_scan(load, std::ref(farm.alone[a][k])));
      }
      if (config.record_feasibility) {
        rec.supported.feasible.resize(load + 1);
        for (std::uint64_t u = 0; u <= load; ++u) rec.supported.feasible[u] = joint(u);
      }
      rec.mapped = joint(load);
      if (rec.mapped) rec.psi_mm = psi_at(infra, procs, load);
      rec.psi_at_supported = psi_at(infra, procs, rec.supported.joint);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

ArchCompareResult run_arch_compare(const ArchCompareConfig& config) {
  validate(config);
  const std::vector<CpProcedure> workload = scenario::gen_5gc_workload();
  std::vector<std::vector<ArchCompareRecord>> per_size(config.server_counts.size());
  parallel_for(per_size.size(), config.run.threads, [&](std::size_t k) {
    per_size[k] = run_servers(config, workload, config.server_counts[k]);
  });
  ArchCompareResult result;
  for (auto& batch : per_size) {
    for (auto& r : batch) result.records.push_back(std::move(r));
  }
  return result;
}

std::vector<std::string> arch_compare_columns(std::size_t procedure_count) {
  std::vector<std::string> cols{"servers", "architecture", "load", "i_hat_joint"};
  for (std::size_t t = 0; t < procedure_count; ++t) cols.push_back("i_hat_t" + std::to_string(t));
  for (const char* c : {"mapped", "psi_mm", "psi_at_i_hat", "min_server_cpu", "max_server_cpu",
                        "max_node_cpu"}) {
    cols.emplace_back(c);
  }
  return cols;
}

std::vector<std::filesystem::path> write_arch_compare(const ArchCompareResult& result,
                                                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::size_t procs =
      result.records.empty() ? 0 : result.records.front().supported.per_procedure.size();
  CsvTable table(arch_compare_columns(procs));
  CsvTable bitmap({"servers", "architecture", "load", "u", "feasible"});
  bool any_bitmap = false;
  for (const auto& r : result.records) {
    std::vector<std::string> row{std::to_string(r.servers), r.architecture,
                                 std::to_string(r.load), std::to_string(r.supported.joint)};
    for (const auto& entry : r.supported.per_procedure) row.push_back(std::to_string(entry.second));
    row.push_back(r.mapped ? "1" : "0");
    row.push_back(format_number(r.psi_mm));
    row.push_back(format_number(r.psi_at_supported));
    row.push_back(format_number(r.min_server_cpu));
    row.push_back(format_number(r.max_server_cpu));
    row.push_back(format_number(r.max_node_cpu));
    table.add_row(std::move(row));
    for (std::size_t u = 0; u < r.supported.feasible.size(); ++u) {
      any_bitmap = true;
      bitmap.add_row({std::to_string(r.servers), r.architecture, std::to_string(r.load),
                      std::to_string(u), r.supported.feasible[u] ? "1" : "0"});
    }
  }
  std::vector<std::filesystem::path> written{out_dir / "arch_compare.csv"};
  table.write(written.back());
  if (any_bitmap) {
    written.push_back(out_dir / "arch_compare_feasibility.csv");
    bitmap.write(written.back());
  }
  return written;
}

}  // namespace coreplace::harness

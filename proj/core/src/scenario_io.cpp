// SPDX-License-Identifier: Apache-2.0
#include "coreplace/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "coreplace/errors.hpp"
#include "coreplace/flows.hpp"

namespace coreplace {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_number()) throw ConfigError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::uint64_t unsigned_int(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Infrastructure parse_infrastructure(const json& j, double cpu_scale, double mem_scale) {
  std::vector<ServerSpec> servers;
  for (const auto& s : require(j, "servers")) {
    servers.push_back({unsigned_int(s, "id"), number(s, "cpu") / cpu_scale,
                       number(s, "mem") / mem_scale});
  }
  std::sort(servers.begin(), servers.end(),
            [](const ServerSpec& a, const ServerSpec& b) { return a.id < b.id; });
  const std::size_t n = servers.size();
  const bool mesh = j.value("full_mesh", false);
  const double mesh_capacity = mesh ? number(j, "mesh_capacity") : 0.0;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, mesh));
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, mesh ? mesh_capacity : 0.0));
  if (j.contains("links")) {
    for (const auto& l : j.at("links")) {
      const auto a = unsigned_int(l, "a");
      const auto b = unsigned_int(l, "b");
      if (a >= n || b >= n) throw ConfigError("link references an unknown server");
      if (a == b) continue;
      const double c = number(l, "capacity");
      adj[a][b] = adj[b][a] = true;
      cap[a][b] = c;
      cap[b][a] = l.contains("capacity_ba") ? number(l, "capacity_ba") : c;
    }
  }
  return Infrastructure(std::move(servers), adj, cap);
}

CpProcedure parse_procedure(const json& j, double cpu_scale, double mem_scale) {
  std::vector<MsSpec> ms;
  for (const auto& m : require(j, "ms")) {
    MsSpec spec;
    spec.id = unsigned_int(m, "id");
    spec.cpu_footprint = number(m, "cpu") / cpu_scale;
    spec.mem_footprint = number(m, "mem") / mem_scale;
    spec.max_load = m.contains("load") ? unsigned_int(m, "load") : 1;
    spec.remote_penalty = m.contains("remote_penalty_s") ? number(m, "remote_penalty_s") : 0.0;
    ms.push_back(spec);
  }
  std::sort(ms.begin(), ms.end(), [](const MsSpec& a, const MsSpec& b) { return a.id < b.id; });
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      Edge edge;
      edge.src = unsigned_int(e, "src");
      edge.dst = unsigned_int(e, "dst");
      edge.base_time = number(e, "base_time_s");
      if (e.contains("remote_penalty_s")) edge.remote_penalty = number(e, "remote_penalty_s");
      edges.push_back(edge);
    }
  }
  return CpProcedure(unsigned_int(j, "id"), std::move(ms), std::move(edges),
                     j.value("name", std::string{}));
}

json infrastructure_json(const Infrastructure& infra) {
  json servers = json::array();
  for (const auto& s : infra.servers()) {
    servers.push_back({{"id", s.id}, {"cpu", s.cpu_capacity}, {"mem", s.mem_capacity}});
  }
  json links = json::array();
  const std::size_t n = infra.server_count();
  for (ServerId a = 0; a < n; ++a) {
    for (ServerId b = a + 1; b < n; ++b) {
      if (!infra.adjacent(a, b)) continue;
      json l = {{"a", a}, {"b", b}, {"capacity", infra.link_capacity(a, b).value()}};
      if (infra.link_capacity(b, a) != infra.link_capacity(a, b)) {
        l["capacity_ba"] = infra.link_capacity(b, a).value();
      }
      links.push_back(std::move(l));
    }
  }
  return {{"servers", std::move(servers)}, {"links", std::move(links)}, {"full_mesh", false}};
}

json procedure_json(const CpProcedure& p) {
  json ms = json::array();
  for (const auto& m : p.ms()) {
    ms.push_back({{"id", m.id},
                  {"cpu", m.cpu_footprint},
                  {"mem", m.mem_footprint},
                  {"load", m.max_load},
                  {"remote_penalty_s", m.remote_penalty}});
  }
  json edges = json::array();
  for (const auto& e : p.edges()) {
    json je = {{"src", e.src}, {"dst", e.dst}, {"base_time_s", e.base_time}};
    if (e.remote_penalty) je["remote_penalty_s"] = *e.remote_penalty;
    edges.push_back(std::move(je));
  }
  json out = {{"id", p.id()}, {"ms", std::move(ms)}, {"edges", std::move(edges)}};
  if (!p.name().empty()) out["name"] = p.name();
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  const json root = parse_json(json_text);
  try {
    const auto& infra_json = require(root, "infrastructure");
    double cpu_scale = 1.0;
    double mem_scale = 1.0;
    const std::string units = root.value("units", std::string("normalized"));
    if (units == "absolute") {
      cpu_scale = mem_scale = 0.0;
      for (const auto& s : require(infra_json, "servers")) {
        cpu_scale = std::max(cpu_scale, number(s, "cpu"));
        mem_scale = std::max(mem_scale, number(s, "mem"));
      }
      if (cpu_scale <= 0.0 || mem_scale <= 0.0) {
        throw ConfigError("absolute units need at least one server with positive capacity");
      }
    } else if (units != "normalized") {
      throw ConfigError("units must be \"normalized\" or \"absolute\"");
    }
    Infrastructure infra = parse_infrastructure(infra_json, cpu_scale, mem_scale);
    std::vector<CpProcedure> procedures;
    for (const auto& p : require(root, "procedures")) {
      procedures.push_back(parse_procedure(p, cpu_scale, mem_scale));
    }
    std::sort(procedures.begin(), procedures.end(),
              [](const CpProcedure& a, const CpProcedure& b) { return a.id() < b.id(); });
    Workload workload;
    if (root.contains("workload")) {
      for (const auto& w : root.at("workload")) {
        workload[unsigned_int(w, "procedure")] = unsigned_int(w, "requests");
      }
    }
    return Scenario{std::move(infra), std::move(procedures), std::move(workload)};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path));
}

std::string scenario_to_json(const Scenario& scenario) {
  json procs = json::array();
  for (const auto& p : scenario.procedures) procs.push_back(procedure_json(p));
  json workload = json::array();
  for (const auto& [t, u] : scenario.workload) {
    workload.push_back({{"procedure", t}, {"requests", u}});
  }
  json root = {{"units", "normalized"},
               {"infrastructure", infrastructure_json(scenario.infra)},
               {"procedures", std::move(procs)},
               {"workload", std::move(workload)}};
  return root.dump(2) + "\n";
}

std::string assignment_report_json(const Scenario& scenario, const ReplicaPlan& plan,
                                   const Assignment& assignment) {
  json rows = json::array();
  for (const auto& [k, s] : assignment) {
    rows.push_back({{"procedure", k.procedure}, {"ms", k.ms}, {"replica", k.replica},
                    {"server", s}});
  }
  const auto flows = link_flows(scenario.infra, scenario.procedures, plan, assignment);
  const std::size_t n = scenario.infra.server_count();
  json matrix = json::array();
  for (ServerId a = 0; a < n; ++a) {
    json row = json::array();
    for (ServerId b = 0; b < n; ++b) row.push_back(flows(a, b));
    matrix.push_back(std::move(row));
  }
  const auto load = server_load(scenario.infra, scenario.procedures, assignment);
  json util = json::array();
  for (ServerId s = 0; s < n; ++s) {
    const auto& srv = scenario.infra.server(s);
    util.push_back({{"server", s},
                    {"cpu", load[s].first},
                    {"mem", load[s].second},
                    {"cpu_fraction", srv.cpu_capacity > 0 ? load[s].first / srv.cpu_capacity : 0.0},
                    {"mem_fraction", srv.mem_capacity > 0 ? load[s].second / srv.mem_capacity : 0.0}});
  }
  const auto report = check_constraints(scenario.infra, scenario.procedures, plan, assignment);
  json constraints = json::object();
  for (const auto& c : report.checks) constraints[to_string(c.kind)] = c.passed;
  json root = {{"assignment", std::move(rows)},
               {"psi", objective_psi(flows)},
               {"link_flows", std::move(matrix)},
               {"per_server_utilization", std::move(util)},
               {"constraints", std::move(constraints)}};
  return root.dump(2) + "\n";
}

Assignment parse_assignment(std::string_view json_text) {
  const json root = parse_json(json_text);
  try {
    const json& rows = root.is_array() ? root : require(root, "assignment");
    if (!rows.is_array()) throw ConfigError("\"assignment\" must be an array");
    Assignment out;
    for (const auto& r : rows) {
      InstanceKey k{unsigned_int(r, "procedure"), unsigned_int(r, "ms"), unsigned_int(r, "replica")};
      if (!out.emplace(k, unsigned_int(r, "server")).second) {
        throw ConfigError("instance listed twice in assignment");
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed assignment: ") + e.what());
  }
}

Assignment load_assignment(const std::filesystem::path& path) {
  return parse_assignment(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace coreplace

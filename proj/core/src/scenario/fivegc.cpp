// SPDX-License-Identifier: Apache-2.0
#include <json.hpp>

#include "coreplace/errors.hpp"
#include "coreplace/scenario/fivegc.hpp"
#include "coreplace/scenario_io.hpp"

namespace coreplace::scenario {

CpProcedure chain_procedure(ProcedureId id, std::size_t length, std::string name,
                            double base_time, double remote_penalty) {
  std::vector<MsSpec> ms;
  std::vector<Edge> edges;
  for (MsId i = 0; i < length; ++i) {
    ms.push_back({i, 1.0, 1.0, remote_penalty, 1});
    if (i + 1 < length) edges.push_back({i, i + 1, base_time, std::nullopt});
  }
  return CpProcedure(id, std::move(ms), std::move(edges), std::move(name));
}

std::vector<CpProcedure> gen_5gc_workload() {
  std::vector<CpProcedure> out;
  out.push_back(chain_procedure(0, kRegistrationLength, "UE Registration"));
  out.push_back(chain_procedure(1, kDeregistrationLength, "UE Deregistration"));
  out.push_back(chain_procedure(2, kSessionModificationLength, "PDU Session Modification"));
  return out;
}

namespace {

void add_block(NfGrouping& g, const char* name, ProcedureId t, MsId first, MsId last) {
  NfGroup group{name, t, {}};
  for (MsId i = first; i <= last; ++i) group.ms_ids.push_back(i);
  g.push_back(std::move(group));
}

}  // namespace

NfGrouping default_nf_grouping() {
  NfGrouping g;
  add_block(g, "AMF", 0, 0, 11);
  add_block(g, "AUSF", 0, 12, 15);
  add_block(g, "UDM", 0, 16, 21);
  add_block(g, "PCF", 0, 22, 25);
  add_block(g, "SMF", 0, 26, 29);
  add_block(g, "NRF", 0, 30, 33);
  add_block(g, "AMF", 1, 0, 6);
  add_block(g, "SMF", 1, 7, 9);
  add_block(g, "UDM", 1, 10, 12);
  add_block(g, "PCF", 1, 13, 14);
  add_block(g, "SMF", 2, 0, 5);
  add_block(g, "AMF", 2, 6, 8);
  add_block(g, "PCF", 2, 9, 10);
  add_block(g, "UDM", 2, 11, 12);
  return g;
}

NfGrouping parse_nf_grouping(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    NfGrouping g;
    for (const auto& item : j.at("groups")) {
      NfGroup group;
      group.name = item.at("name").get<std::string>();
      group.procedure = item.value("procedure", ProcedureId{0});
      group.ms_ids = item.at("ms_ids").get<std::vector<MsId>>();
      if (group.ms_ids.empty()) throw ConfigError("group '" + group.name + "' has no members");
      g.push_back(std::move(group));
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed NF grouping: ") + e.what());
  }
}

NfGrouping load_nf_grouping(const std::filesystem::path& path) {
  return parse_nf_grouping(read_text_file(path));
}

std::string nf_grouping_to_json(const NfGrouping& grouping) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : grouping) {
    groups.push_back({{"name", g.name}, {"procedure", g.procedure}, {"ms_ids", g.ms_ids}});
  }
  return nlohmann::json{{"groups", groups}}.dump(2) + "\n";
}

}  // namespace coreplace::scenario

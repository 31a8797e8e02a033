// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace::scenario {

inline constexpr std::size_t kRegistrationLength = 34;
inline constexpr std::size_t kDeregistrationLength = 15;
inline constexpr std::size_t kSessionModificationLength = 13;

/// UE Registration (id 0), UE Deregistration (1) and PDU Session
/// Modification (2) as MS chains of 34, 15 and 13 nodes. Each MS has unit
/// footprints, a 1 ms base time, a 0.5 ms remote penalty and max load 1.
std::vector<CpProcedure> gen_5gc_workload();

/// A chain i -> i+1 over `length` MSs.
CpProcedure chain_procedure(ProcedureId id, std::size_t length, std::string name,
                            double base_time = 1e-3, double remote_penalty = 0.5e-3);

struct NfGroup {
  std::string name;
  ProcedureId procedure = 0;
  std::vector<MsId> ms_ids;
};

using NfGrouping = std::vector<NfGroup>;

/// Illustrative NF labels over contiguous chain blocks of the 5GC workload.
NfGrouping default_nf_grouping();

/// {"groups": [{"name", "procedure", "ms_ids": [...]}]}. "procedure"
/// defaults to 0. Throws ConfigError on malformed input.
NfGrouping parse_nf_grouping(std::string_view json_text);
NfGrouping load_nf_grouping(const std::filesystem::path& path);
std::string nf_grouping_to_json(const NfGrouping& grouping);

}  // namespace coreplace::scenario

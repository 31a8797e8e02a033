// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coreplace/flows.hpp"
#include "coreplace/model.hpp"

namespace coreplace::mm {

/// A connected piece of the one-instance graph of a procedure, waiting to be
/// placed on a single server.
struct Fragment {
  std::vector<MsId> members;  // sorted, nonempty
  double delta_cpu = 0.0;
  double delta_mem = 0.0;
  double delta_out = 0.0;  // flow from members toward instances outside the fragment
};

/// Residual server and link capacity plus per-MS placement progress, shared
/// by every procedure mapped on the same infrastructure.
class PlacementLedger {
 public:
  explicit PlacementLedger(const Infrastructure& infra);

  const Infrastructure& infra() const { return *infra_; }

  double residual(ServerId s, Resource r) const {
    return r == Resource::Cpu ? cpu_[s] : mem_[s];
  }
  /// Remaining capacity of link a->b; the diagonal is unbounded.
  LinkCapacity link_residual(ServerId a, ServerId b) const;
  double link_residual_value(ServerId a, ServerId b) const { return link_[a * n_ + b]; }

  /// Registers a procedure and its replica counts. Must precede place().
  void begin_procedure(const CpProcedure& procedure, std::span<const std::size_t> replicas);
  bool has_procedure(ProcedureId t) const;

  /// Instances of MS i already placed (omega_i).
  std::size_t placed(ProcedureId t, MsId i) const;
  std::size_t replicas(ProcedureId t, MsId i) const;
  /// Servers currently hosting MS i, with instance counts, sorted by server.
  const std::vector<std::pair<ServerId, std::size_t>>& hosts(ProcedureId t, MsId i) const;

  /// Places the next replica of MS i on s, consuming server capacity and
  /// charging the flows between the new instance and every placed partner.
  void place(ProcedureId t, MsId i, ServerId s);

  /// Flows implied by the placed instances, recomputed from scratch.
  LinkFlows recompute_flows() const;
  /// Smallest residual over links charged so far (+inf before any charge).
  double min_link_residual() const { return min_link_residual_; }

  const Assignment& assignment() const { return assignment_; }
  std::vector<CpProcedure> procedures() const;

 private:
  struct ProcedureState {
    CpProcedure procedure;
    std::vector<std::size_t> replicas;
    std::vector<std::size_t> omega;
    MsServerCounts hosts;
  };

  ProcedureState& state(ProcedureId t);
  void charge(std::size_t link, double flow);
  const ProcedureState& state(ProcedureId t) const;

  const Infrastructure* infra_;
  std::size_t n_;
  std::vector<double> cpu_;
  std::vector<double> mem_;
  std::vector<double> link_;  // diagonal unused
  double min_link_residual_;
  std::vector<ProcedureState> procedures_;
  Assignment assignment_;
};

struct BffResult {
  std::optional<ServerId> server;
  std::vector<ServerId> candidates;  // every feasible server, ascending; filled on request
};

/// Best-Fit-First server selection for a fragment of procedure `t`.
///
/// A server qualifies when it has the residual CPU and memory for the
/// fragment, is adjacent to every server hosting a partner of a member, can
/// carry every concrete flow between the new instances and placed partners,
/// and (if `previous` is set and differs) the link previous->s can carry
/// `previous_flow`. The winner minimizes the leftover CPU plus memory; ties go
/// to the lowest id among slacks within tolerance of the minimum.
BffResult bff_select(const PlacementLedger& ledger, const CpProcedure& procedure,
                     std::optional<ServerId> previous, double previous_flow,
                     const Fragment& fragment, bool list_candidates = false);

/// Splits a fragment (>= 2 members) along the minimum cut of its symmetrized
/// remote-flow graph. The first result holds the smallest member id.
/// Throws DomainError for a singleton.
std::pair<Fragment, Fragment> gp_partition(const CpProcedure& procedure,
                                           std::span<const std::size_t> replicas,
                                           const Fragment& fragment);

/// Fragment over `members` with footprint sums and outgoing flow filled in.
Fragment make_fragment(const CpProcedure& procedure, std::span<const std::size_t> replicas,
                       std::vector<MsId> members);

enum class MmStatus { Mapped, NoSolution };

enum class MmFailure { None, SingletonDoesNotFit, LinkCapacityExceeded };

const char* to_string(MmFailure f);

struct MmOptions {
  /// When set, one JSON object per inner-loop step is written here.
  std::ostream* trace = nullptr;
};

struct MmOutcome {
  MmStatus status = MmStatus::NoSolution;
  MmFailure failure = MmFailure::None;
  std::optional<ProcedureId> failed_procedure;
  Assignment assignment;  // instances mapped by this call
  std::size_t rounds = 0;
  std::size_t max_steps_per_round = 0;  // pops of the fragment stack
  std::size_t max_round_members = 0;    // |M| of the round that hit max_steps_per_round
};

/// Maps every replica of `procedure` onto the ledger's infrastructure.
/// On success the ledger holds the new placements; on failure it is unchanged.
MmOutcome mm_map(const CpProcedure& procedure, const ReplicaPlan& plan, PlacementLedger& ledger,
                 const MmOptions& options = {});

/// Runs mm_map for every procedure in ascending id order on a fresh ledger.
MmOutcome mm_map_all(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const MmOptions& options = {});

}  // namespace coreplace::mm

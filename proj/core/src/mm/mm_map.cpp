// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "coreplace/errors.hpp"
#include "coreplace/mm/mm.hpp"

namespace coreplace::mm {

const char* to_string(MmFailure f) {
  switch (f) {
    case MmFailure::None:
      return "none";
    case MmFailure::SingletonDoesNotFit:
      return "singleton_does_not_fit";
    case MmFailure::LinkCapacityExceeded:
      return "link_capacity_exceeded";
  }
  return "unknown";
}

namespace {

// Residuals only shrink through charged flows, so the smallest one decides.
bool links_within_capacity(const PlacementLedger& ledger) {
  return ledger.min_link_residual() >= -kTolerance;
}

void trace_step(std::ostream& os, ProcedureId t, std::size_t round, std::size_t step,
                const Fragment& fragment, const BffResult& bff, const double* cut_value) {
  nlohmann::json j;
  j["procedure"] = t;
  j["round"] = round;
  j["step"] = step;
  j["members"] = fragment.members;
  j["delta_cpu"] = fragment.delta_cpu;
  j["delta_mem"] = fragment.delta_mem;
  j["delta_out"] = fragment.delta_out;
  j["candidates"] = bff.candidates;
  j["chosen"] = bff.server ? nlohmann::json(*bff.server) : nlohmann::json(nullptr);
  j["cut_value"] = cut_value ? nlohmann::json(*cut_value) : nlohmann::json(nullptr);
  os << j.dump() << '\n';
}

}  // namespace

MmOutcome mm_map(const CpProcedure& procedure, const ReplicaPlan& plan, PlacementLedger& ledger,
                 const MmOptions& options) {
  const ProcedureId t = procedure.id();
  const auto& replicas = plan.of(t);
  if (replicas.size() != procedure.size()) {
    throw DomainError("replica plan does not match procedure " + std::to_string(t));
  }

  PlacementLedger work = ledger;
  work.begin_procedure(procedure, replicas);

  MmOutcome outcome;
  auto fail = [&](MmFailure why) {
    outcome.status = MmStatus::NoSolution;
    outcome.failure = why;
    outcome.failed_procedure = t;
    outcome.assignment.clear();
    return outcome;
  };

  const std::size_t rounds = replicas.empty() ? 0 : *std::max_element(replicas.begin(), replicas.end());
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<MsId> active;
    for (MsId i = 0; i < procedure.size(); ++i) {
      if (work.placed(t, i) < replicas[i]) active.push_back(i);
    }
    ++outcome.rounds;
    if (active.empty()) continue;

    Fragment root = make_fragment(procedure, replicas, active);
    root.delta_out = 0.0;
    std::vector<Fragment> stack{std::move(root)};
    std::optional<ServerId> previous;
    double previous_flow = 0.0;
    std::size_t steps = 0;

    while (!stack.empty()) {
      Fragment fragment = std::move(stack.back());
      stack.pop_back();
      ++steps;
      const BffResult bff = bff_select(work, procedure, previous, previous_flow, fragment,
                                       options.trace != nullptr);
      if (bff.server) {
        for (MsId i : fragment.members) {
          if (work.placed(t, i) < replicas[i]) work.place(t, i, *bff.server);
        }
        previous = bff.server;
        previous_flow = fragment.delta_out;
        if (options.trace) trace_step(*options.trace, t, round, steps, fragment, bff, nullptr);
        continue;
      }
      if (fragment.members.size() < 2) {
        if (options.trace) trace_step(*options.trace, t, round, steps, fragment, bff, nullptr);
        return fail(MmFailure::SingletonDoesNotFit);
      }
      auto [first, second] = gp_partition(procedure, replicas, fragment);
      if (options.trace) {
        double crossing = 0.0;
        for (MsId i : first.members) {
          for (std::size_t k : procedure.out_edges(i)) {
            const auto& e = procedure.edges()[k];
            if (std::binary_search(second.members.begin(), second.members.end(), e.dst)) {
              crossing += pair_flow(procedure, e, replicas[e.dst], false);
            }
          }
          for (std::size_t k : procedure.in_edges(i)) {
            const auto& e = procedure.edges()[k];
            if (std::binary_search(second.members.begin(), second.members.end(), e.src)) {
              crossing += pair_flow(procedure, e, replicas[i], false);
            }
          }
        }
        trace_step(*options.trace, t, round, steps, fragment, bff, &crossing);
      }
      // The first part sits on top so it is placed next.
      stack.push_back(std::move(second));
      stack.push_back(std::move(first));
    }

    if (steps > outcome.max_steps_per_round) {
      outcome.max_steps_per_round = steps;
      outcome.max_round_members = active.size();
    }
    if (!links_within_capacity(work)) return fail(MmFailure::LinkCapacityExceeded);
  }

  for (const auto& [key, server] : work.assignment()) {
    if (key.procedure == t) outcome.assignment.emplace(key, server);
  }
  outcome.status = MmStatus::Mapped;
  ledger = std::move(work);
  return outcome;
}

MmOutcome mm_map_all(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                     const ReplicaPlan& plan, const MmOptions& options) {
  std::vector<const CpProcedure*> order;
  for (const auto& p : procedures) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const CpProcedure* a, const CpProcedure* b) { return a->id() < b->id(); });

  PlacementLedger ledger(infra);
  MmOutcome total;
  total.status = MmStatus::Mapped;
  for (const CpProcedure* p : order) {
    MmOutcome one = mm_map(*p, plan, ledger, options);
    if (one.status != MmStatus::Mapped) {
      one.assignment.clear();
      return one;
    }
    total.rounds += one.rounds;
    if (one.max_steps_per_round > total.max_steps_per_round) {
      total.max_steps_per_round = one.max_steps_per_round;
      total.max_round_members = one.max_round_members;
    }
    total.assignment.merge(one.assignment);
  }
  return total;
}

}  // namespace coreplace::mm

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <utility>

#include "coreplace/exact/ilp_model.hpp"
#include "coreplace/flows.hpp"

namespace coreplace::exact {

namespace {

std::string placement_name(const InstanceKey& k, ServerId s) {
  return "x_" + std::to_string(k.procedure) + "_" + std::to_string(k.ms) + "_" +
         std::to_string(k.replica) + "_" + std::to_string(s);
}

std::vector<Term> sorted_terms(const std::map<std::size_t, double>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [v, c] : acc) out.push_back({v, c});
  return out;
}

bool interchangeable(const Infrastructure& infra, ServerId s, ServerId t) {
  const auto& a = infra.server(s);
  const auto& b = infra.server(t);
  if (a.cpu_capacity != b.cpu_capacity || a.mem_capacity != b.mem_capacity) return false;
  if (infra.link_capacity(s, t) != infra.link_capacity(t, s)) return false;
  for (ServerId o = 0; o < infra.server_count(); ++o) {
    if (o == s || o == t) continue;
    if (infra.adjacent(s, o) != infra.adjacent(t, o)) return false;
    if (infra.link_capacity(s, o) != infra.link_capacity(t, o)) return false;
    if (infra.link_capacity(o, s) != infra.link_capacity(o, t)) return false;
  }
  return true;
}

}  // namespace

IlpModel linearize(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                   const ReplicaPlan& plan) {
  const InstanceTable table(procedures, plan);
  const std::size_t n_servers = infra.server_count();

  IlpModel model;
  model.server_count = n_servers;
  model.instances = table.keys();

  for (std::size_t n = 0; n < table.size(); ++n) {
    for (ServerId s = 0; s < n_servers; ++s) {
      Variable v;
      v.kind = VarKind::Placement;
      v.instance = n;
      v.server = s;
      v.name = placement_name(table.key(n), s);
      model.variables.push_back(std::move(v));
    }
  }

  // Products keyed by their (ordered) factor pair; i->j and j->i share one.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> product_of;
  std::map<std::size_t, double> objective;
  std::map<std::pair<ServerId, ServerId>, std::map<std::size_t, double>> flow_rows;
  std::map<std::pair<ServerId, ServerId>, std::map<std::size_t, double>> adjacency_rows;

  const auto product = [&](std::size_t x1, std::size_t x2) {
    const auto key = std::minmax(x1, x2);
    auto [it, inserted] = product_of.emplace(std::pair{key.first, key.second}, model.variables.size());
    if (inserted) {
      Variable v;
      v.kind = VarKind::Product;
      v.first = key.first;
      v.second = key.second;
      v.name = "y_" + std::to_string(product_of.size() - 1);
      model.variables.push_back(std::move(v));
    }
    return it->second;
  };

  for (std::size_t pos = 0; pos < procedures.size(); ++pos) {
    const auto& p = procedures[pos];
    const auto& tau = plan.of(p.id());
    for (const auto& e : p.edges()) {
      if (tau[e.src] == 0 || tau[e.dst] == 0) continue;
      const double remote = pair_flow(p, e, tau[e.dst], false);
      for (std::size_t l = 0; l < tau[e.src]; ++l) {
        const std::size_t from = table.first(pos, e.src) + l;
        for (std::size_t q = 0; q < tau[e.dst]; ++q) {
          const std::size_t to = table.first(pos, e.dst) + q;
          for (ServerId a = 0; a < n_servers; ++a) {
            for (ServerId b = 0; b < n_servers; ++b) {
              if (a == b) continue;
              const std::size_t y = product(model.placement_var(from, a), model.placement_var(to, b));
              objective[y] += remote;
              if (!infra.link_capacity(a, b).is_unbounded()) flow_rows[{a, b}][y] += remote;
              if (!infra.adjacent(a, b)) adjacency_rows[std::minmax(a, b)][y] = 1.0;
            }
          }
        }
      }
    }
  }

  for (std::size_t n = 0; n < table.size(); ++n) {
    Row row{RowKind::Assignment, {}, Sense::Equal, 1.0, "assign_" + std::to_string(n)};
    for (ServerId s = 0; s < n_servers; ++s) row.terms.push_back({model.placement_var(n, s), 1.0});
    model.rows.push_back(std::move(row));
  }

  for (ServerId s = 0; s < n_servers; ++s) {
    for (Resource r : kResources) {
      Row row{RowKind::Capacity, {}, Sense::LessEqual, infra.server(s).capacity(r),
              std::string("cap_") + to_string(r) + "_" + std::to_string(s)};
      for (std::size_t pos = 0; pos < procedures.size(); ++pos) {
        const auto& p = procedures[pos];
        for (MsId i = 0; i < p.size(); ++i) {
          const double f = p.ms(i).footprint(r);
          if (f == 0.0) continue;
          for (std::size_t n = table.first(pos, i); n < table.first(pos, i + 1); ++n) {
            row.terms.push_back({model.placement_var(n, s), f});
          }
        }
      }
      model.rows.push_back(std::move(row));
    }
  }

  for (const auto& [pair, terms] : adjacency_rows) {
    model.rows.push_back({RowKind::Adjacency, sorted_terms(terms), Sense::LessEqual, 0.0,
                          "adj_" + std::to_string(pair.first) + "_" + std::to_string(pair.second)});
  }

  for (const auto& [pair, terms] : flow_rows) {
    model.rows.push_back({RowKind::Flow, sorted_terms(terms), Sense::LessEqual,
                          infra.link_capacity(pair.first, pair.second).value(),
                          "flow_" + std::to_string(pair.first) + "_" + std::to_string(pair.second)});
  }

  for (const auto& [factors, y] : product_of) {
    const auto& name = model.variables[y].name;
    model.rows.push_back({RowKind::ProductUpperFirst, {{y, 1.0}, {factors.first, -1.0}},
                          Sense::LessEqual, 0.0, name + "_u1"});
    model.rows.push_back({RowKind::ProductUpperSecond, {{y, 1.0}, {factors.second, -1.0}},
                          Sense::LessEqual, 0.0, name + "_u2"});
    model.rows.push_back({RowKind::ProductLower,
                          {{factors.first, 1.0}, {factors.second, 1.0}, {y, -1.0}},
                          Sense::LessEqual, 1.0, name + "_l"});
  }

  model.objective = sorted_terms(objective);

  model.server_class.assign(n_servers, 0);
  std::vector<ServerId> representatives;
  for (ServerId s = 0; s < n_servers; ++s) {
    auto it = std::find_if(representatives.begin(), representatives.end(),
                           [&](ServerId r) { return interchangeable(infra, r, s); });
    if (it == representatives.end()) {
      model.server_class[s] = representatives.size();
      representatives.push_back(s);
    } else {
      model.server_class[s] = static_cast<std::size_t>(it - representatives.begin());
    }
  }
  return model;
}

ModelStats model_stats(const IlpModel& model) {
  return {model.variables.size(), model.rows.size()};
}

double row_activity(const Row& row, std::span<const double> values) {
  double sum = 0.0;
  for (const auto& t : row.terms) sum += t.coef * values[t.var];
  return sum;
}

bool row_satisfied(const Row& row, std::span<const double> values, double tolerance) {
  const double lhs = row_activity(row, values);
  switch (row.sense) {
    case Sense::LessEqual: return lhs <= row.rhs + tolerance;
    case Sense::GreaterEqual: return lhs >= row.rhs - tolerance;
    case Sense::Equal: return lhs <= row.rhs + tolerance && lhs >= row.rhs - tolerance;
  }
  return false;
}

}  // namespace coreplace::exact

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "coreplace/model.hpp"

namespace coreplace::exact {

enum class VarKind { Placement, Product };

/// Binary variable. Placement variables are x_{instance,server}; product
/// variables stand for first * second (both placement variables).
struct Variable {
  VarKind kind = VarKind::Placement;
  std::size_t instance = 0;  // placement only
  ServerId server = 0;       // placement only
  std::size_t first = 0;     // product only
  std::size_t second = 0;    // product only
  std::string name;
};

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

enum class RowKind {
  Assignment,    // sum_s x = 1 per instance
  Capacity,      // sum f x <= r per server and resource
  Adjacency,     // sum y <= 0 over products spanning a non-adjacent pair
  Flow,          // sum w y <= n per finite directed link
  ProductUpperFirst,   // y - x1 <= 0
  ProductUpperSecond,  // y - x2 <= 0
  ProductLower,        // x1 + x2 - y <= 1
};

struct Row {
  RowKind kind = RowKind::Assignment;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string name;
};

/// Linearized placement problem: products of placement binaries replaced by
/// auxiliary binaries constrained with the three McCormick rows.
struct IlpModel {
  std::size_t server_count = 0;
  std::vector<InstanceKey> instances;  // placement variable of (n, s) is n * server_count + s
  std::vector<Variable> variables;
  std::vector<Row> rows;
  std::vector<Term> objective;  // minimize
  /// Servers with equal class are interchangeable: same capacities and the
  /// same link capacities toward every other server.
  std::vector<std::size_t> server_class;

  std::size_t placement_var(std::size_t instance, ServerId s) const {
    return instance * server_count + s;
  }
};

struct ModelStats {
  std::size_t variables = 0;
  std::size_t constraints = 0;

  bool operator==(const ModelStats&) const = default;
};

IlpModel linearize(const Infrastructure& infra, std::span<const CpProcedure> procedures,
                   const ReplicaPlan& plan);

ModelStats model_stats(const IlpModel& model);

/// Row activity for a full 0/1 (or fractional) vector of variable values.
double row_activity(const Row& row, std::span<const double> values);
bool row_satisfied(const Row& row, std::span<const double> values, double tolerance = kTolerance);

/// CPLEX LP text format; variables named x_t_i_r_s and y_k.
void write_lp(const IlpModel& model, std::ostream& out);

}  // namespace coreplace::exact

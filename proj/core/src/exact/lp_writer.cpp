// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <ostream>

#include "coreplace/exact/ilp_model.hpp"

namespace coreplace::exact {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_terms(const IlpModel& model, const std::vector<Term>& terms, std::ostream& out) {
  if (terms.empty()) {
    out << " 0 " << (model.variables.empty() ? "" : model.variables.front().name);
    return;
  }
  std::size_t on_line = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    const double mag = t.coef < 0 ? -t.coef : t.coef;
    out << (t.coef < 0 ? " - " : (k == 0 ? " " : " + ")) << format_number(mag) << ' '
        << model.variables[t.var].name;
    if (++on_line == 8 && k + 1 < terms.size()) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

void write_lp(const IlpModel& model, std::ostream& out) {
  out << "\\ placement model: " << model.variables.size() << " binaries, " << model.rows.size()
      << " rows\n";
  out << "Minimize\n obj:";
  write_terms(model, model.objective, out);
  out << "\nSubject To\n";
  for (const auto& row : model.rows) {
    out << ' ' << row.name << ':';
    write_terms(model, row.terms, out);
    switch (row.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << format_number(row.rhs) << '\n';
  }
  out << "Binary\n";
  for (const auto& v : model.variables) out << ' ' << v.name << '\n';
  out << "End\n";
}

}  // namespace coreplace::exact

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coreplace::harness {

/// Shortest decimal that round-trips, independent of locale.
std::string format_number(double v);
std::string format_number(std::optional<double> v);  // empty when unset

/// Minimal RFC 4180 table writer.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  /// Throws DomainError when the cell count differs from the header.
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Parses CSV text produced by CsvTable (quoted fields allowed).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace coreplace::harness

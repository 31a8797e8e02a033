// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace coreplace {

/// Malformed or inconsistent input: scenario files, workloads, experiment configs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (absent edge, zero replicas, unknown server).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive search refused because the assignment space is too large.
class SearchSpaceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace coreplace

#pragma once

// Falsifier suites behind `nilgal verify`. Each target runs one family of
// checks over the catalog (or a single group) and records every case.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilgal/malle.hpp"
#include "nilgal/series.hpp"

namespace nilgal {

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// random (l, S, T) draws for the class-field targets
  std::size_t trials = 200;
  /// bound for the biquadratic fiber target
  std::uint64_t max_x = 1000000;
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  /// largest catalog order used by the group targets
  std::size_t max_order = 64;
  BaseFieldData field = BaseFieldData::rationals();
  /// restrict the group targets to one group (catalog name or cycles)
  std::optional<std::string> group;
};

struct VerifyCase {
  std::string subject;
  bool passed = false;
  nlohmann::json detail;
};

struct VerifyResult {
  std::string target;
  std::string description;
  std::vector<VerifyCase> cases;
  bool passed() const;
  std::size_t failures() const;
  nlohmann::json to_json() const;
};

struct VerifyTarget {
  std::string name;
  std::string description;
};

const std::vector<VerifyTarget>& verify_targets();

/// Throws UnknownTheorem for a name not in verify_targets().
VerifyResult run_verify(const std::string& target, const VerifyOptions& options);

}  // namespace nilgal

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cellspec/io.hpp"
#include "cellspec/spectrum.hpp"

namespace cellspec::suites {

using io::Json;

struct SuiteOptions {
  /// Worker threads. Results are merged in instance order, so the report does
  /// not depend on this.
  std::size_t jobs = 1;
  FamilyCaps caps;
  /// Random instance i uses seed ^ i.
  std::uint64_t seed = 20190601;
  std::size_t random_count = 1000;
  /// Oracle bound for agreement rows whose family criterion holds.
  std::size_t test_bound = 4;
  bool timings = false;
};

struct SuiteResult {
  std::string name;
  /// Individual checks performed.
  std::size_t instances = 0;
  /// One serialized counterexample per failed check.
  std::vector<Json> violations;
  /// Suite-specific data (agreement table, reported-only gaps, counts).
  Json details = Json::object();
  double millis = 0.0;

  bool passed() const { return violations.empty(); }
};

/// tech1, t-family, witness-family, tech2, proj-pullback, denspec-finite,
/// alexandrov, product-spectrum, chain, enumeration, agreement-experiment.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Throws PreconditionUnmet for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

/// Report document: suite, version, seed, caps, instances, violations,
/// details, and millis when timings are on.
Json to_json(const SuiteResult& result, const SuiteOptions& options);

}  // namespace cellspec::suites

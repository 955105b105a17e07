#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idem/json_io.hpp"
#include "idem/measure.hpp"

// Seeded randomized property suites behind `idemcli check`.
namespace idem::suites {

struct FailureRecord {
  std::optional<std::size_t> trial;  // nullopt for suite-level conditions
  std::uint64_t seed = 0;            // per-trial seed; replays the trial alone
  std::string inputs_digest;         // FNV-1a 64 of the trial's canonical inputs
  std::string check;
  std::string expected;
  std::string actual;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::vector<FailureRecord> failures;
  std::map<std::string, std::uint64_t> counters;
  double wall_ms = 0.0;

  bool pass() const { return failures.empty(); }
};

struct SuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  /// Run exactly one trial with this per-trial seed (from a FailureRecord).
  std::optional<std::uint64_t> replay_seed;
};

const std::vector<std::string>& suite_names();

/// Throws Error(Input) for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

/// Wall time is nondeterministic and only emitted with include_timing.
io::Json to_json(const SuiteReport& report, bool include_timing = false);

}  // namespace idem::suites

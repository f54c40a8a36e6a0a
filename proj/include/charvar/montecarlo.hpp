#pragma once

// Seeded invariance suites over random matrix representations. Shared by
// `charvar verify --mode sample` and the acceptance runner.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace charvar {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::pair<std::string, double>> metrics;  // in a fixed order
  std::vector<std::string> messages;                    // first few failures

  void fail(std::string message);
  void metric(std::string key, double value);
  double metric_value(const std::string& key) const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  double tolerance = 1e-9;
};

/// SO(3) commuting pairs (half of each obstruction class) plus the
/// pi-rotation fixture; class stable under conjugation and lift branches.
SuiteResult obstruction_suite(const SuiteOptions& opt, std::size_t conjugations = 100, std::size_t branches = 1000);

/// F_2, Z^2 and genus-2 (b_i = I) representations into U(2) and U(3).
SuiteResult lift_suite(const SuiteOptions& opt);

/// Deck vectors with entries in [-bound, bound] on Z^2 lifts into U(2), U(3).
SuiteResult deck_suite(const SuiteOptions& opt, long bound = 3);

/// Commuting U(3) pairs: joint eigenvalues against the construction.
SuiteResult canonical_form_suite(const SuiteOptions& opt);

/// kappa on commuting SU(2) pairs and on independent Haar pairs.
SuiteResult su2_trace_suite(const SuiteOptions& opt);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt);

}  // namespace charvar

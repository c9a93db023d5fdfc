#pragma once

// Invariant suites behind the `verify` command.

#include <string>
#include <vector>

namespace superlogic {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // deviation must exceed the tolerance
  bool passed = false;
};

struct SuiteReport {
  std::string scope;
  std::vector<CheckResult> checks;

  bool ok() const;
  /// One line per check: `scope/name deviation <=|> tolerance PASS|FAIL`.
  std::string render() const;
};

/// Known scopes: algebra, symbols, gates, composer, automaton.
const std::vector<std::string>& verify_scopes();
/// Runs one scope, or every scope for "all".
std::vector<SuiteReport> run_verification(const std::string& scope);

}  // namespace superlogic

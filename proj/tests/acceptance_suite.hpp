#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radneedlet::acceptance {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Fewer benchmark realizations (5 instead of 50); results are not the gate.
  bool quick = false;
  int jobs = 1;
  /// Criterion ids to run (empty: all).
  std::vector<std::string> only;
};

/// Runs the criteria in order, printing one PASS/FAIL line per criterion (plus
/// indented diagnostics) to `log` as they finish.
std::vector<CriterionResult> run(const Options& options, std::ostream& log);

}  // namespace radneedlet::acceptance

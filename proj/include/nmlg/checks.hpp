#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nmlg {

// One cross-validation between independent evaluation paths.
struct CheckResult {
  std::string name;
  bool pass;
  double value;      // value produced by the path under test
  double expected;   // reference value (NaN when the check has no single reference)
  double error;      // achieved discrepancy, in the units of `tolerance`
  double tolerance;  // pass threshold on `error`
  std::optional<double> std_error;
  std::string detail;
  std::vector<std::pair<std::string, double>> extras;
};

struct VerifyOptions {
  std::string only;  // empty = all groups; else one of: atten1d atten2d mc in props regions
  std::optional<std::int64_t> n_override;  // switches the `in` group to the limit experiment
  std::int64_t samples = 200000;
  std::uint64_t seed = 12648430;
  int threads = 1;
  double max_se = 0.005;  // std-error budget for the limit experiment
};

// Runs the requested check groups. Throws std::domain_error for an unknown
// group name; individual check failures are reported, not thrown.
std::vector<CheckResult> run_checks(const VerifyOptions& opt);

}  // namespace nmlg

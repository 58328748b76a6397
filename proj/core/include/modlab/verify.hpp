#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modlab {

/// Outcome of one invariant check.
struct CheckOutcome {
  std::string suite;
  std::string name;
  /// The module invariant being checked, in words.
  std::string invariant;
  /// The result of the underlying theory the invariant instantiates.
  std::string citation;
  bool passed = false;
  /// Measured quantities, or the error message when the check threw.
  std::string detail;
};

/// core, differences, moduli, kernels, extremals, approx, rates.
[[nodiscard]] std::vector<std::string> suite_names();

/// Runs one suite, or every suite for "all". Throws InvalidArgumentError for
/// unknown names. Checks never throw; a thrown error is a failed check.
[[nodiscard]] std::vector<CheckOutcome> run_suite(const std::string& name,
                                                  std::uint64_t seed = 42);

}  // namespace modlab

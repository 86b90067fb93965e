#pragma once

// Property suites over seeded random finite models and fixed toral examples.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace expansia {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  /// First failing case, described.
  std::string counterexample;

  bool ok() const noexcept { return passed == cases; }
};

/// "toral" and "finite-models".
const std::vector<std::string>& suite_names();

/// `models` is the number of random models per property (finite-models only).
std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed, std::size_t models = 200);

}  // namespace expansia

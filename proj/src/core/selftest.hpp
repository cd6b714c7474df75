#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kt {

struct SuiteResult {
  std::string name;
  uint32_t checks = 0;
  bool passed = true;
  std::string counterexample;  // minimal failing instance, empty on pass
};

struct SelftestReport {
  uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool all_passed = true;
};

// Cross-module property suites at desk scale, fully deterministic in the
// seed. The environment variable KT_SELFTEST_INJECT=chain poisons the
// inequality corpus with an impossible sequence; it exists so harnesses can
// verify that failures are caught and serialized.
SelftestReport run_selftest(uint64_t seed);

std::string render_selftest(const SelftestReport& report);

}  // namespace kt

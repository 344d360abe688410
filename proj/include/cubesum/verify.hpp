#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubesum/modarith.hpp"

namespace cubesum {

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

// Invariant suites behind `verify`. `cap` bounds the moduli / window scales
// each suite walks; the default of 300 reproduces the full oracle sweep.
SuiteResult verify_gauss(Int cap);
SuiteResult verify_reciprocity(Int cap, std::uint64_t seed);
SuiteResult verify_identities(Int cap, std::uint64_t seed);
SuiteResult verify_poisson(Int cap, std::uint64_t seed);

/// suite is one of gauss, identities, reciprocity, poisson, all.
std::vector<SuiteResult> run_verify(const std::string& suite, Int cap, std::uint64_t seed);

}  // namespace cubesum

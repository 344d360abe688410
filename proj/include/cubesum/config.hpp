#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cubesum/harness.hpp"

namespace cubesum {

// Flat `key = value` sweep description; '#' starts a comment. Lists accept
// commas and/or whitespace. Keys:
//   q_list          explicit moduli
//   q_primes_range  lo hi [count]  (count seeded primes, all primes if omitted)
//   theta           one or more exponents, N = floor(q^theta)
//   a_samples       random coprime a per q, on top of 1 and q-1
//   gamma_list      linear coefficients
//   seed            unsigned 64-bit
//   epsilon         exponent slack in the Weyl bound column
// At least one of q_list / q_primes_range is required. Unknown keys,
// duplicate keys and malformed values raise ConfigError. A seed override
// replaces the file's seed before primes are drawn.
SweepGrid parse_sweep_config(std::string_view text, std::optional<std::uint64_t> seed_override = {});

SweepGrid load_sweep_config(const std::string& path, std::optional<std::uint64_t> seed_override = {});

}  // namespace cubesum

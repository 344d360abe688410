#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cubesum/error.hpp"

namespace cubesum {

// All integer arguments are signed 128-bit; moduli are kept below 2^63 so a
// product of two reduced residues always fits.
using Int = __int128;

inline constexpr Int kMaxModulus = (Int(1) << 63) - 1;

Int gcd(Int a, Int b);
Int floor_mod(Int a, Int m);
Int floor_div(Int a, Int m);
Int mul_mod(Int a, Int b, Int m);
Int pow_mod(Int base, Int exp, Int m);

/// Inverse of a modulo m in [0, m). mod_inverse(x, 1) == 0.
Int mod_inverse(Int a, Int m);

/// Jacobi symbol (a/n) for odd n >= 1. Negative a is handled through
/// (-1/n) = (-1)^((n-1)/2).
int jacobi(Int a, Int n);

bool is_prime(Int n);

struct PrimePower {
  Int prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

/// Complete factorization, primes increasing. factorize(1) is empty.
Factorization factorize(Int q);

/// All positive divisors of q in increasing order.
std::vector<Int> divisors(Int q);

std::string to_string(Int v);

/// Parses a decimal integer (optional leading '-'). Throws DomainError.
Int parse_int(std::string_view text);

// A rational number taken modulo 1, always stored reduced with
// 0 <= num < den and gcd(num, den) == 1.
class Mod1Rational {
 public:
  Mod1Rational() = default;
  Mod1Rational(Int num, Int den);

  static Mod1Rational zero() { return {}; }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  /// Representative in [0, 1) as a double.
  double value() const;
  long double value_ld() const;

  Mod1Rational operator+(const Mod1Rational& other) const;
  Mod1Rational operator-(const Mod1Rational& other) const;
  Mod1Rational operator-() const;
  Mod1Rational scaled(Int k) const;

  bool operator==(const Mod1Rational&) const = default;

  std::string str() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

struct InverseReciprocity {
  Mod1Rational inv_a_over_b;  // (a^-1 mod b) / b
  Mod1Rational inv_b_over_a;  // (b^-1 mod a) / a
  Mod1Rational recip_ab;      // 1 / (ab)
};

/// Reciprocity for modular inverses: (a^-1 mod b)/b + (b^-1 mod a)/a == 1/(ab)
/// mod 1. The identity is checked exactly before returning.
InverseReciprocity inverse_reciprocity(Int a, Int b);

}  // namespace cubesum

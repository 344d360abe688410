#include "cubesum/modarith.hpp"

#include <algorithm>
#include <cstdint>

namespace cubesum {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotCoprimeModuli: return "NotCoprimeModuli";
    case Errc::EvenModulus: return "EvenModulus";
    case Errc::DomainError: return "DomainError";
    case Errc::Overflow: return "Overflow";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::SlowDecay: return "SlowDecay";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoPair: return "NoPair";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::ConfigError: return "ConfigError";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::IdentityFailed: return "IdentityFailed";
  }
  return "Unknown";
}

namespace {

constexpr Int kMulDirectLimit = Int(1) << 63;

Int abs_int(Int v) { return v < 0 ? -v : v; }

}  // namespace

Int gcd(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Int floor_mod(Int a, Int m) {
  if (m <= 0) throw Error(Errc::DomainError, "modulus must be positive");
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int floor_div(Int a, Int m) {
  if (m <= 0) throw Error(Errc::DomainError, "divisor must be positive");
  Int q = a / m;
  if ((a % m) < 0) --q;
  return q;
}

Int mul_mod(Int a, Int b, Int m) {
  a = floor_mod(a, m);
  b = floor_mod(b, m);
  if (m <= kMulDirectLimit) return a * b % m;
  // Wide moduli: double-and-add keeps every intermediate below 2m.
  Int result = 0;
  while (b > 0) {
    if (b & 1) {
      result += a;
      if (result >= m) result -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return result;
}

Int pow_mod(Int base, Int exp, Int m) {
  if (exp < 0) throw Error(Errc::DomainError, "negative exponent");
  Int result = floor_mod(1, m);
  base = floor_mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Int mod_inverse(Int a, Int m) {
  if (m <= 0) throw Error(Errc::DomainError, "modulus must be positive");
  if (m == 1) return 0;
  Int old_r = floor_mod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(Errc::NotCoprime, "gcd(" + to_string(a) + ", " + to_string(m) + ") = " +
                                      to_string(old_r));
  }
  return floor_mod(old_s, m);
}

int jacobi(Int a, Int n) {
  if (n <= 0 || (n & 1) == 0) {
    throw Error(Errc::EvenModulus, "jacobi modulus must be odd and positive, got " + to_string(n));
  }
  int result = 1;
  if (a < 0) {
    a = -a;
    if (n % 4 == 3) result = -result;
  }
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      Int r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for n < 3.3e24, which covers every modulus
  // we accept.
  for (Int base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    if (base % n == 0) continue;
    Int x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Brent's variant of Pollard rho. n is odd, composite, and has no small factor.
Int pollard_rho(Int n) {
  for (Int c = 1;; ++c) {
    auto step = [&](Int x) { return (mul_mod(x, x, n) + c) % n; };
    Int y = 2, x = 2, g = 1, q = 1, ys = 2;
    Int r = 1;
    constexpr Int kBatch = 128;
    do {
      x = y;
      for (Int i = 0; i < r; ++i) y = step(y);
      Int k = 0;
      do {
        ys = y;
        for (Int i = 0; i < std::min(kBatch, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, abs_int(x - y), n);
        }
        g = gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs_int(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(Int n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int f = pollard_rho(n);
  collect_factors(f, out);
  collect_factors(n / f, out);
}

}  // namespace

Factorization factorize(Int q) {
  if (q < 1) throw Error(Errc::DomainError, "factorize expects q >= 1");
  std::vector<Int> primes;
  for (Int p = 2; p < 1000 && p * p <= q; ++p) {
    while (q % p == 0) {
      primes.push_back(p);
      q /= p;
    }
  }
  collect_factors(q, primes);
  std::sort(primes.begin(), primes.end());

  Factorization result;
  for (Int p : primes) {
    if (!result.empty() && result.back().prime == p) {
      ++result.back().exponent;
    } else {
      result.push_back({p, 1});
    }
  }
  return result;
}

std::vector<Int> divisors(Int q) {
  std::vector<Int> result{1};
  for (const auto& [p, e] : factorize(q)) {
    const std::size_t base = result.size();
    Int power = 1;
    for (int k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < base; ++i) result.push_back(result[i] * power);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with the negative magnitude so INT128_MIN is representable.
  std::string digits;
  Int x = negative ? v : -v;
  while (x != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw Error(Errc::DomainError, "empty integer");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw Error(Errc::DomainError, "not an integer: '" + std::string(text) + "'");
  constexpr Int kLimit = (Int(1) << 125);
  Int value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw Error(Errc::DomainError, "not a decimal integer: '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
    if (value > kLimit) throw Error(Errc::Overflow, "integer too large: " + std::string(text));
  }
  return negative ? -value : value;
}

Mod1Rational::Mod1Rational(Int num, Int den) {
  if (den == 0) throw Error(Errc::DomainError, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = floor_mod(num, den);
  const Int g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double Mod1Rational::value() const { return static_cast<double>(value_ld()); }

long double Mod1Rational::value_ld() const {
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

Mod1Rational Mod1Rational::operator+(const Mod1Rational& other) const {
  const Int g = gcd(den_, other.den_);
  const Int left = den_ / g;
  constexpr Int kLimit = Int(1) << 124;
  if (left > kLimit / other.den_) throw Error(Errc::Overflow, "Mod1Rational denominator overflow");
  const Int lcm = left * other.den_;
  const Int a = mul_mod(num_, lcm / den_, lcm);
  const Int b = mul_mod(other.num_, lcm / other.den_, lcm);
  return {a + b, lcm};
}

Mod1Rational Mod1Rational::operator-() const { return {den_ - num_, den_}; }

Mod1Rational Mod1Rational::operator-(const Mod1Rational& other) const { return *this + (-other); }

Mod1Rational Mod1Rational::scaled(Int k) const { return {mul_mod(num_, k, den_), den_}; }

std::string Mod1Rational::str() const { return to_string(num_) + "/" + to_string(den_); }

InverseReciprocity inverse_reciprocity(Int a, Int b) {
  if (a < 1 || b < 1) throw Error(Errc::DomainError, "inverse_reciprocity expects positive a, b");
  if (gcd(a, b) != 1) {
    throw Error(Errc::NotCoprime, "gcd(" + to_string(a) + ", " + to_string(b) + ") != 1");
  }
  InverseReciprocity r{Mod1Rational(mod_inverse(a, b), b), Mod1Rational(mod_inverse(b, a), a),
                       Mod1Rational(1, a * b)};
  if (r.inv_a_over_b + r.inv_b_over_a != r.recip_ab) {
    throw Error(Errc::IdentityFailed, "inverse reciprocity fails at a=" + to_string(a) +
                                          ", b=" + to_string(b));
  }
  return r;
}

}  // namespace cubesum

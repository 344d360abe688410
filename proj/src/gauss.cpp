#include "cubesum/gauss.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "compensated.hpp"

namespace cubesum {

GaussParams::GaussParams(Int a_in, Int ell_in, Int q_in) {
  if (q_in < 1) throw Error(Errc::DomainError, "Gauss sum modulus must be >= 1");
  if (q_in > kMaxModulus) throw Error(Errc::Overflow, "Gauss sum modulus exceeds 2^63 - 1");
  q = q_in;
  a = floor_mod(a_in, q);
  ell = floor_mod(ell_in, q);
}

Complex unit_value(UnitFactor u) {
  switch (u) {
    case UnitFactor::Zero: return {0.0, 0.0};
    case UnitFactor::One: return {1.0, 0.0};
    case UnitFactor::I: return {0.0, 1.0};
    case UnitFactor::MinusOne: return {-1.0, 0.0};
    case UnitFactor::MinusI: return {0.0, -1.0};
    case UnitFactor::OnePlusI: return {1.0, 1.0};
    case UnitFactor::OneMinusI: return {1.0, -1.0};
  }
  return {0.0, 0.0};
}

std::string unit_name(UnitFactor u) {
  switch (u) {
    case UnitFactor::Zero: return "0";
    case UnitFactor::One: return "1";
    case UnitFactor::I: return "i";
    case UnitFactor::MinusOne: return "-1";
    case UnitFactor::MinusI: return "-i";
    case UnitFactor::OnePlusI: return "1+i";
    case UnitFactor::OneMinusI: return "1-i";
  }
  return "?";
}

Complex GaussValue::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  const double scale = static_cast<double>(
      static_cast<long double>(multiplier) * std::sqrt(static_cast<long double>(radicand)));
  return static_cast<double>(sign) * e_of(phase) * unit_value(unit) * scale;
}

std::string GaussValue::str() const {
  if (is_zero()) return "0";
  return std::string(sign > 0 ? "+1" : "-1") + " * e(" + phase.str() + ") * (" + unit_name(unit) +
         ") * " + to_string(multiplier) + " * sqrt(" + to_string(radicand) + ")";
}

namespace {

// e_q(k) for k in [0, q), computed once per modulus per thread.
const std::vector<Complex>& roots_of_unity(Int q) {
  thread_local Int cached_q = 0;
  thread_local std::vector<Complex> table;
  if (cached_q != q) {
    table.resize(static_cast<std::size_t>(q));
    for (Int k = 0; k < q; ++k) table[static_cast<std::size_t>(k)] = e_of(Mod1Rational(k, q));
    cached_q = q;
  }
  return table;
}

// epsilon_d: 1 if d = 1 mod 4, i if d = 3 mod 4.
UnitFactor epsilon(Int d) { return d % 4 == 1 ? UnitFactor::One : UnitFactor::I; }

// G(a, 0; q) for odd q, gcd(a, q) = 1.
GaussValue gauss_zero_odd(Int a, Int q) {
  GaussValue v;
  v.sign = jacobi(a, q);
  v.unit = epsilon(q);
  v.multiplier = 1;
  v.radicand = q;
  return v;
}

// G(a, 0; q) for q = 0 mod 4, gcd(a, q) = 1; a is odd and in [1, q).
GaussValue gauss_zero_mod4(Int a, Int q) {
  GaussValue v;
  v.sign = jacobi(q, a);
  v.unit = (a % 4 == 1) ? UnitFactor::OnePlusI : UnitFactor::OneMinusI;
  v.multiplier = 1;
  v.radicand = q;
  return v;
}

GaussValue vanishing() { return GaussValue{}; }

}  // namespace

Complex gauss_brute(const GaussParams& p) {
  if (p.q > kGaussOracleLimit) {
    throw Error(Errc::OracleTooLarge, "brute-force Gauss sum limited to q <= 10^6, got " + to_string(p.q));
  }
  const auto& roots = roots_of_unity(p.q);
  CompensatedSum<Complex> sum;
  // r(mu) = a mu^2 + l mu mod q, advanced by r(mu+1) - r(mu) = a(2 mu + 1) + l.
  Int r = 0;
  Int step = floor_mod(p.a + p.ell, p.q);
  const Int step_inc = floor_mod(2 * p.a, p.q);
  for (Int mu = 1; mu <= p.q; ++mu) {
    r += step;
    if (r >= p.q) r -= p.q;
    step += step_inc;
    if (step >= p.q) step -= p.q;
    sum += roots[static_cast<std::size_t>(r)];
  }
  return sum.value();
}

CompletedSquare complete_square_reduce(const GaussParams& p, CompletionPath path) {
  if (gcd(p.a, p.q) != 1) {
    throw Error(Errc::NotCoprime, "completing the square needs gcd(a, q) = 1");
  }
  const Int q = p.q;
  if (path == CompletionPath::Odd) {
    if (q % 2 == 0) throw Error(Errc::DomainError, "odd completion path needs odd q");
    // G(a, l; q) = e_q(-(4a)^-1 l^2) G(a, 0; q).
    const Int inv4a = mod_inverse(mul_mod(4, p.a, q), q);
    const Int num = mul_mod(inv4a, mul_mod(p.ell, p.ell, q), q);
    return {Mod1Rational(-num, q), GaussParams(p.a, 0, q)};
  }
  const Int inv_a = mod_inverse(p.a, q);
  if (p.ell % 2 == 0) {
    const Int half = p.ell / 2;
    const Int num = mul_mod(inv_a, mul_mod(half, half, q), q);
    return {Mod1Rational(-num, q), GaussParams(p.a, 0, q)};
  }
  const Int quarter = floor_mod((p.ell * p.ell - 1) / 4, q);
  const Int num = mul_mod(inv_a, quarter, q);
  return {Mod1Rational(-num, q), GaussParams(inv_a, inv_a, q)};
}

CompletedSquare complete_square_reduce(const GaussParams& p) {
  return complete_square_reduce(p, p.q % 2 == 1 ? CompletionPath::Odd : CompletionPath::Parity);
}

GaussValue gauss_closed(const GaussParams& p) {
  const Int q = p.q;
  if (gcd(p.a, q) != 1) {
    throw Error(Errc::NotCoprime, "closed form needs gcd(a, q) = 1; a=" + to_string(p.a) +
                                      ", q=" + to_string(q));
  }
  if (q % 2 == 1) {
    const CompletedSquare cs = complete_square_reduce(p, CompletionPath::Odd);
    GaussValue v = gauss_zero_odd(p.a, q);
    v.phase = cs.phase;
    return v;
  }
  if (q % 4 == 0) {
    // Odd l: the 2-part G(a q', l; 2^k), k >= 2, vanishes.
    if (p.ell % 2 == 1) return vanishing();
    const CompletedSquare cs = complete_square_reduce(p, CompletionPath::Parity);
    GaussValue v = gauss_zero_mod4(p.a, q);
    v.phase = cs.phase;
    return v;
  }
  // q = 2 q' with q' odd. Even l reduces to G(a, 0; 2q') = 0.
  if (p.ell % 2 == 0) return vanishing();
  const Int half_q = q / 2;
  const CompletedSquare cs = complete_square_reduce(p, CompletionPath::Parity);
  // G(b, b; 2q') = 2 G(2b, b; q') with b = a^-1, then complete on the odd modulus.
  const Int b = cs.reduced.a;
  const GaussParams odd_part(2 * b, b, half_q);
  const CompletedSquare inner = complete_square_reduce(odd_part, CompletionPath::Odd);
  GaussValue v = gauss_zero_odd(odd_part.a, half_q);
  v.phase = cs.phase + inner.phase;
  v.multiplier = 2;
  return v;
}

Complex gauss_eval(Int a, Int ell, Int q) {
  const GaussParams p(a, ell, q);
  if (gcd(p.a, p.q) == 1) return gauss_closed(p).to_complex();
  return gauss_brute(p);
}

GaussMultCheck gauss_mult_check(Int a, Int ell, Int q1, Int q2) {
  if (q1 < 1 || q2 < 1) throw Error(Errc::DomainError, "moduli must be positive");
  if (gcd(q1, q2) != 1) {
    throw Error(Errc::NotCoprimeModuli, "gcd(" + to_string(q1) + ", " + to_string(q2) + ") != 1");
  }
  const Complex lhs = gauss_brute(GaussParams(a, ell, q1 * q2));
  const Complex rhs = gauss_brute(GaussParams(a * q1, ell, q2)) * gauss_brute(GaussParams(a * q2, ell, q1));
  return {lhs, rhs};
}

}  // namespace cubesum

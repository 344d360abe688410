#pragma once

#include <string>

#include "cubesum/expsum.hpp"
#include "cubesum/modarith.hpp"

namespace cubesum {

// Parameters of G(a, l; q) = sum_{mu=1}^{q} e_q(a mu^2 + l mu); a and l are
// kept reduced mod q.
struct GaussParams {
  Int a;
  Int ell;
  Int q;

  GaussParams(Int a, Int ell, Int q);
};

enum class UnitFactor { Zero, One, I, MinusOne, MinusI, OnePlusI, OneMinusI };

Complex unit_value(UnitFactor u);
std::string unit_name(UnitFactor u);

// sign * e(phase) * unit * multiplier * sqrt(radicand).
struct GaussValue {
  int sign = 0;
  Mod1Rational phase;
  UnitFactor unit = UnitFactor::Zero;
  Int multiplier = 0;
  Int radicand = 1;

  bool is_zero() const { return sign == 0 || unit == UnitFactor::Zero || multiplier == 0; }
  Complex to_complex() const;
  std::string str() const;
};

inline constexpr Int kGaussOracleLimit = 1000000;

/// Direct O(q) summation with exact residues. OracleTooLarge for q > 10^6.
Complex gauss_brute(const GaussParams& p);

/// Closed form for gcd(a, q) = 1; NotCoprime otherwise.
GaussValue gauss_closed(const GaussParams& p);

/// Closed form when available, otherwise the brute-force sum.
Complex gauss_eval(Int a, Int ell, Int q);

enum class CompletionPath { Odd, Parity };

struct CompletedSquare {
  Mod1Rational phase;
  GaussParams reduced;
};

/// G(p) = e(phase) * G(reduced), reduced.ell in {0, reduced.a}.
/// Odd path: q odd, reduced = (a, 0). Parity path: any q, reduced = (a, 0)
/// for even l and (a^-1, a^-1) for odd l.
CompletedSquare complete_square_reduce(const GaussParams& p, CompletionPath path);
/// Odd path when q is odd, parity path otherwise.
CompletedSquare complete_square_reduce(const GaussParams& p);

struct GaussMultCheck {
  Complex lhs;
  Complex rhs;
};

/// G(a, l; q1 q2) against G(a q1, l; q2) G(a q2, l; q1), both by brute force.
GaussMultCheck gauss_mult_check(Int a, Int ell, Int q1, Int q2);

}  // namespace cubesum

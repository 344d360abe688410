#pragma once

#include <map>
#include <vector>

#include "cubesum/expsum.hpp"
#include "cubesum/modarith.hpp"

namespace cubesum {

// Solutions of y b = x (mod q) with x, y in closed integer intervals.
struct CongruenceBox {
  Int b;
  Int q;
  Int x_lo, x_hi;
  Int y_lo, y_hi;
};

inline constexpr Int kCountLimit = 10000000;

/// Exact count; brute force over y, so the y interval is capped at 10^7.
Int count_solutions(const CongruenceBox& box);

// b = ell * s^-1 (mod d) and s b = ell + t d exactly.
struct ApproxPair {
  Int ell;
  Int s;
  Int d;
  Int t;
};

/// Short (ell, s) with ell >= 1 and gcd(s, d) = 1 under the weighted norm
/// max(ell / weight_l, |s| / weight_s). Lagrange-reduces the lattice
/// {(ell, s) : ell = s b mod d} and enumerates around the reduced basis to
/// find the exact optimum. When that optimum has ell |s| > 4d, returns the
/// admissible pair of smallest ell |s| among those within twice the optimum.
ApproxPair short_approx(Int b, Int d, double weight_l, double weight_s);

/// max(ell / weight_l, |s| / weight_s).
double weighted_max_norm(Int ell, Int s, double weight_l, double weight_s);

// q0 = q / gcd(q, 3); b = 3a when 3 does not divide q, else b = a. Then
// g(m + n) - g(n) = g(m) + (b m n^2 + b m^2 n) / q0.
struct DifferencingModulus {
  Int q0;
  Int b;
};

DifferencingModulus differencing_modulus(const CubicPhase& phase);

struct DifferenceIdentity {
  double lhs;  // |sum f(n) e(g(n))|^2
  Complex rhs; // sum_m e(g(m)) sum_n f(m+n) f(n) e_q0(b m n^2 + b m^2 n)
  double discrepancy;
};

inline constexpr Int kWindowSupportLimit = 10000;

DifferenceIdentity weyl_difference_identity(const CubicPhase& phase, const SmoothWindow& window);

struct DPartition {
  Int q0;
  Int b;
  /// S'_d for every d | q0, evaluated in the rescaled form with m = q0 m' / d,
  /// gcd(m', q0) = 1, 1 <= |m'| <= dN/q0.
  std::map<Int, Complex> parts;
  /// The differenced sum over 1 <= |m| <= N evaluated directly.
  Complex total;
};

DPartition d_partition(const CubicPhase& phase, const SmoothWindow& window);

struct DualSums {
  Complex s1;
  Complex s2;
  long terms = 0;
  /// m values dropped because d or b m had no inverse modulo the Gauss modulus.
  long skipped = 0;
};

// The two transformed sums over m with dY/(q0 s1) <= |m| <= dN/(q0 s1),
// gcd(m, q0) = gcd(m, s) = 1. The outer phases keep only their a-part,
// a x^3 / (4q); the remaining integer and linear phase data are not
// determined and are set to zero, so the values are diagnostics.
DualSums dual_sum(const CubicPhase& phase, Int d, const ApproxPair& pair, Int s1, Int Y, Int N);

struct MdValue {
  double md;
  double condition;  // ell d M_d^2 N^(11 eps)
  bool condition_holds;  // condition <= 1
};

/// M_d = max( sqrt(|s| q0 / (ell d^2 Y)), N / d ).
MdValue compute_md(const ApproxPair& pair, Int d, Int q0, Int Y, Int N, double eps = 0.0);

}  // namespace cubesum

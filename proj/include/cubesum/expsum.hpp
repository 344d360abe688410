#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cubesum/modarith.hpp"

namespace cubesum {

using Complex = std::complex<double>;

/// e(x) = exp(2 pi i x).
Complex e_of(double x);
Complex e_of(const Mod1Rational& x);

// g(x) = a x^3 / q + gamma x with gcd(a, q) = 1. a is stored reduced mod q.
class CubicPhase {
 public:
  CubicPhase(Int a, Int q, double gamma = 0.0);

  Int a() const { return a_; }
  Int q() const { return q_; }
  double gamma() const { return gamma_; }

  /// Exact cubic part (a n^3 mod q) / q.
  Mod1Rational cubic_part(Int n) const;
  /// g(n) mod 1 in [0, 1); gamma n is reduced with an error-free product.
  double phase_at(Int n) const;

 private:
  Int a_;
  Int q_;
  double gamma_;
};

enum class WindowShape { Bump, Gaussian };

// A smooth weight supported on [N, 2N] with values in [0, 1].
//
// Bump: degree-9 smoothstep ramps (C^4 at the joins) on [N, N + rN] and
// [2N - rN, 2N], plateau 1 between; r is the ramp fraction.
// Gaussian: exp(-(x - 1.5N)^2 / (2 sigma^2)) with sigma = N / width_divisor,
// cut to [N, 2N]. The cut sits 8 sigma out at the default divisor, so the
// jump is ~1e-14.
//
// |f^(j)(x)| <= deriv_cap(j) / x^j for 1 <= j <= 4.
class SmoothWindow {
 public:
  static SmoothWindow bump(Int N, double ramp_fraction = 0.25);
  static SmoothWindow gaussian(Int N, double width_divisor = 16.0);

  WindowShape shape() const { return shape_; }
  Int N() const { return N_; }
  double ramp_fraction() const { return ramp_fraction_; }
  double sigma() const { return sigma_; }

  double operator()(double x) const;
  /// Analytic derivative of order 0..4.
  double derivative(double x, int order) const;
  double deriv_cap(int order) const;

  /// Integers n with f(n) possibly nonzero are [first(), last()].
  Int first() const { return N_; }
  Int last() const { return 2 * N_; }

  /// f^(xi) = \int f(x) e(-x xi) dx, adaptive Simpson to abs_tol.
  Complex fourier(double xi, double abs_tol = 1e-10) const;

  /// Upper bound on |f^(xi)| valid for |xi| >= |xi_min|; Gaussian only.
  double fourier_magnitude_bound(double xi) const;

 private:
  SmoothWindow(WindowShape shape, Int N, double ramp_fraction, double sigma);

  WindowShape shape_;
  Int N_;
  double ramp_fraction_;
  double sigma_;
};

struct SumValue {
  Complex value;
  double err_bound = 0.0;
};

enum class SumOrder { Forward, Reverse };

/// sum_{n=1}^{N} e(g(n)), compensated summation.
SumValue weyl_sum(const CubicPhase& phase, Int N, SumOrder order = SumOrder::Forward);

/// sum_{n in Z} f(n) e(g(n)).
SumValue smooth_weyl_sum(const CubicPhase& phase, const SmoothWindow& window);

// Smooth dyadic partition of unity. With psi a C-infinity step from 0 (u <= 0)
// to 1 (u >= 1) and t = log2 x, V_l(x) = psi(t - l + 1) - psi(t - l), which is
// supported on (2^(l-1), 2^(l+1)), equals 1 at x = 2^l, and telescopes to 1 on
// x >= 1.
double partition_weight(int level, double x);

struct LevelWeight {
  int level;
  double weight;
};

/// Nonzero weights at x (at most two). Requires 1 <= x <= 2^max_level.
std::vector<LevelWeight> partition_weights(double x, int max_level);

struct PoissonCheck {
  Complex lhs;
  Complex rhs;
  double discrepancy;
  double tail_bound;
};

/// Compares sum_n f(n) g(n) with sum_{|m| <= truncation} f^(m/q) g^(-m), where
/// g is q-periodic, given by g_table[x mod q], and
/// g^(eta) = (1/q) sum_x g(x) e_q(-x eta).
PoissonCheck poisson_check(const SmoothWindow& window, std::span<const Complex> g_table,
                           Int truncation);

/// Smallest truncation whose tail bound is below tol.
Int poisson_truncation(const SmoothWindow& window, Int q, double tol = 1e-9);

}  // namespace cubesum

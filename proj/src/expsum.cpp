#include "cubesum/expsum.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "compensated.hpp"

namespace cubesum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Per-term rounding budget for one evaluated exponential: phase reduction,
// argument scaling by 2 pi, and the libm cos/sin calls.
constexpr double kTermErr = 8.0 * kEps;

// Reduces x to [0, 1).
double frac(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Degree-9 smoothstep: S(0)=0, S(1)=1, S^(j)(0)=S^(j)(1)=0 for 1<=j<=4.
constexpr std::array<double, 10> kSmoothstep{0, 0, 0, 0, 0, 126, -420, 540, -315, 70};

double smoothstep_derivative(double t, int order) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return order == 0 ? 1.0 : 0.0;
  double result = 0.0;
  for (int k = 9; k >= order; --k) {
    double coef = kSmoothstep[k];
    for (int j = 0; j < order; ++j) coef *= static_cast<double>(k - j);
    result = result * t + coef;
  }
  return result;
}

// d^j/du^j exp(-u^2/2) = (-1)^j He_j(u) exp(-u^2/2).
double hermite(int order, double u) {
  switch (order) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return u * u - 1.0;
    case 3: return u * u * u - 3.0 * u;
    case 4: return u * u * u * u - 6.0 * u * u + 3.0;
  }
  throw Error(Errc::DomainError, "derivative order must be in [0, 4]");
}

template <typename F>
double sampled_max(F f) {
  constexpr int kSamples = 200000;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i) best = std::max(best, std::abs(f(static_cast<double>(i) / kSamples)));
  return best * 1.01;
}

const std::array<double, 5>& smoothstep_maxima() {
  static const std::array<double, 5> maxima = [] {
    std::array<double, 5> m{};
    for (int j = 0; j <= 4; ++j) m[j] = sampled_max([j](double t) { return smoothstep_derivative(t, j); });
    return m;
  }();
  return maxima;
}

const std::array<double, 5>& gaussian_maxima() {
  static const std::array<double, 5> maxima = [] {
    std::array<double, 5> m{};
    for (int j = 0; j <= 4; ++j) {
      // |He_j(u)| exp(-u^2/2) peaks inside |u| < 4 for j <= 4.
      m[j] = sampled_max([j](double s) {
        const double u = 8.0 * s - 4.0;
        return hermite(j, u) * std::exp(-0.5 * u * u);
      });
    }
    return m;
  }();
  return maxima;
}

double full_gaussian_hat(double sigma, double xi) {
  return sigma * std::sqrt(kTwoPi) * std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma * xi * xi);
}

// Mass of the untruncated Gaussian outside [N, 2N].
double gaussian_cut_mass(const SmoothWindow& window) {
  const double sigma = window.sigma();
  return sigma * std::sqrt(kTwoPi) * std::erfc(0.5 * static_cast<double>(window.N()) / (sigma * std::numbers::sqrt2));
}

struct SimpsonPanel {
  double a, b;
  Complex fa, fm, fb, whole;
};

template <typename F>
Complex adaptive_simpson(const F& f, const SimpsonPanel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const Complex flm = f(lm);
  const Complex frm = f(rm);
  const Complex left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const Complex right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const Complex delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

template <typename F>
Complex integrate(const F& f, double a, double b, int panels, double tol) {
  CompensatedSum<Complex> total;
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const Complex flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
    const Complex whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += adaptive_simpson(f, {lo, hi, flo, fmid, fhi, whole}, tol / panels, 40);
  }
  return total.value();
}

}  // namespace

Complex e_of(double x) {
  double r = x - std::round(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

Complex e_of(const Mod1Rational& x) {
  // Fold to (-1/2, 1/2] before converting so the argument stays small.
  Int num = x.num();
  if (2 * num > x.den()) num -= x.den();
  const long double r = static_cast<long double>(num) / static_cast<long double>(x.den());
  const long double angle = 2.0L * std::numbers::pi_v<long double> * r;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

CubicPhase::CubicPhase(Int a, Int q, double gamma) : gamma_(gamma) {
  if (q < 1) throw Error(Errc::DomainError, "q must be positive");
  if (q > kMaxModulus) throw Error(Errc::Overflow, "q exceeds 2^63 - 1");
  if (!std::isfinite(gamma)) throw Error(Errc::DomainError, "gamma must be finite");
  if (gcd(a, q) != 1) {
    throw Error(Errc::NotCoprime, "gcd(a, q) != 1 for a=" + to_string(a) + ", q=" + to_string(q));
  }
  a_ = floor_mod(a, q);
  q_ = q;
}

Mod1Rational CubicPhase::cubic_part(Int n) const {
  const Int r = floor_mod(n, q_);
  const Int cube = mul_mod(mul_mod(r, r, q_), r, q_);
  return {mul_mod(a_, cube, q_), q_};
}

double CubicPhase::phase_at(Int n) const {
  const Mod1Rational cubic = cubic_part(n);
  if (gamma_ == 0.0) return cubic.value();
  constexpr Int kExactDouble = Int(1) << 53;
  if (n > kExactDouble || n < -kExactDouble) {
    throw Error(Errc::Overflow, "n too large for exact linear phase: " + to_string(n));
  }
  // gamma * n = hi + lo exactly; hi - floor(hi) is exact in binary floating point.
  const double nd = static_cast<double>(n);
  const double hi = gamma_ * nd;
  const double lo = std::fma(gamma_, nd, -hi);
  return frac(frac(hi) + lo + cubic.value());
}

SmoothWindow::SmoothWindow(WindowShape shape, Int N, double ramp_fraction, double sigma)
    : shape_(shape), N_(N), ramp_fraction_(ramp_fraction), sigma_(sigma) {}

SmoothWindow SmoothWindow::bump(Int N, double ramp_fraction) {
  if (N < 1) throw Error(Errc::DomainError, "window scale N must be positive");
  if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5)) {
    throw Error(Errc::DomainError, "ramp fraction must lie in (0, 1/2]");
  }
  return {WindowShape::Bump, N, ramp_fraction, 0.0};
}

SmoothWindow SmoothWindow::gaussian(Int N, double width_divisor) {
  if (N < 1) throw Error(Errc::DomainError, "window scale N must be positive");
  if (!(width_divisor >= 2.0)) throw Error(Errc::DomainError, "width divisor must be >= 2");
  return {WindowShape::Gaussian, N, 0.0, static_cast<double>(N) / width_divisor};
}

double SmoothWindow::operator()(double x) const { return derivative(x, 0); }

double SmoothWindow::derivative(double x, int order) const {
  if (order < 0 || order > 4) throw Error(Errc::DomainError, "derivative order must be in [0, 4]");
  const double lo = static_cast<double>(N_);
  const double hi = 2.0 * lo;
  if (x < lo || x > hi) return 0.0;
  if (shape_ == WindowShape::Gaussian) {
    const double u = (x - 1.5 * lo) / sigma_;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return sign * hermite(order, u) * std::exp(-0.5 * u * u) / std::pow(sigma_, order);
  }
  const double ramp = ramp_fraction_ * lo;
  const double scale = std::pow(ramp, -order);
  if (x < lo + ramp) return scale * smoothstep_derivative((x - lo) / ramp, order);
  if (x > hi - ramp) {
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return sign * scale * smoothstep_derivative((hi - x) / ramp, order);
  }
  return order == 0 ? 1.0 : 0.0;
}

double SmoothWindow::deriv_cap(int order) const {
  if (order < 1 || order > 4) throw Error(Errc::DomainError, "derivative order must be in [1, 4]");
  // x <= 2N on the support, so x^j |f^(j)| <= max|profile^(j)| (2N / width)^j.
  if (shape_ == WindowShape::Gaussian) {
    return gaussian_maxima()[order] * std::pow(2.0 * static_cast<double>(N_) / sigma_, order);
  }
  return smoothstep_maxima()[order] * std::pow(2.0 / ramp_fraction_, order);
}

Complex SmoothWindow::fourier(double xi, double abs_tol) const {
  const double lo = static_cast<double>(N_);
  const double center = 1.5 * lo;
  // Integrate in y = x - center; e(-x xi) = e(-center xi) e(-y xi).
  auto integrand = [&](double y) { return derivative(center + y, 0) * e_of(-y * xi); };
  const double half = 0.5 * lo;
  double feature = shape_ == WindowShape::Gaussian ? sigma_ : ramp_fraction_ * lo;
  const int panels = static_cast<int>(
      std::min(1.0e6, std::max({16.0, std::ceil(2.0 * half * std::abs(xi) * 4.0),
                                std::ceil(2.0 * half / (0.5 * feature))})));
  return e_of(-center * xi) * integrate(integrand, -half, half, panels, abs_tol);
}

double SmoothWindow::fourier_magnitude_bound(double xi) const {
  if (shape_ != WindowShape::Gaussian) {
    throw Error(Errc::SlowDecay, "transform bound only available for Gaussian windows");
  }
  return full_gaussian_hat(sigma_, xi) + gaussian_cut_mass(*this);
}

SumValue weyl_sum(const CubicPhase& phase, Int N, SumOrder order) {
  if (N < 1) throw Error(Errc::DomainError, "N must be positive");
  CompensatedSum<Complex> sum;
  for (Int i = 1; i <= N; ++i) {
    const Int n = (order == SumOrder::Forward) ? i : N + 1 - i;
    sum += e_of(phase.phase_at(n));
  }
  const double terms = static_cast<double>(N);
  return {sum.value(), kTermErr * terms + 2.0 * kEps * std::abs(sum.value())};
}

SumValue smooth_weyl_sum(const CubicPhase& phase, const SmoothWindow& window) {
  CompensatedSum<Complex> sum;
  double weight = 0.0;
  for (Int n = window.first(); n <= window.last(); ++n) {
    const double f = window(static_cast<double>(n));
    if (f == 0.0) continue;
    sum += f * e_of(phase.phase_at(n));
    weight += f;
  }
  return {sum.value(), kTermErr * weight + 2.0 * kEps * std::abs(sum.value())};
}

namespace {

double psi_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double left = std::exp(-1.0 / u);
  const double right = std::exp(-1.0 / (1.0 - u));
  return left / (left + right);
}

}  // namespace

double partition_weight(int level, double x) {
  if (!(x > 0.0)) return 0.0;
  const double t = std::log2(x);
  return psi_step(t - level + 1) - psi_step(t - level);
}

std::vector<LevelWeight> partition_weights(double x, int max_level) {
  if (!(x >= 1.0)) throw Error(Errc::DomainError, "partition_weights expects x >= 1");
  const double t = std::log2(x);
  if (t > static_cast<double>(max_level)) {
    throw Error(Errc::DomainError, "x exceeds 2^max_level; weights would not sum to 1");
  }
  const int k = static_cast<int>(std::floor(t));
  const double u = t - k;
  const double upper = psi_step(u);
  std::vector<LevelWeight> weights;
  if (upper < 1.0) weights.push_back({k, 1.0 - upper});
  if (upper > 0.0) weights.push_back({k + 1, upper});
  return weights;
}

namespace {

// 2 * sum_{m > T} of the untruncated transform at m / q.
double gaussian_tail(const SmoothWindow& window, Int q, Int truncation) {
  double tail = 0.0;
  const double qd = static_cast<double>(q);
  for (Int m = truncation + 1;; ++m) {
    const double term = full_gaussian_hat(window.sigma(), static_cast<double>(m) / qd);
    tail += term;
    if (term <= 1e-18 * tail || term < 1e-300) break;
  }
  return 2.0 * tail;
}

// The truncated window differs from the full Gaussian by the cut mass, both in
// the direct sum (at most cut + 2 edge values) and in each transform term.
double poisson_error_bound(const SmoothWindow& window, Int q, Int truncation) {
  const double sigma = window.sigma();
  const double cut = gaussian_cut_mass(window);
  const double edge = std::exp(-0.5 * std::pow(0.5 * static_cast<double>(window.N()) / sigma, 2));
  const double direct = 2.0 * edge + cut;
  return gaussian_tail(window, q, truncation) + direct + static_cast<double>(2 * truncation + 1) * cut;
}

}  // namespace

Int poisson_truncation(const SmoothWindow& window, Int q, double tol) {
  if (window.shape() != WindowShape::Gaussian) {
    throw Error(Errc::SlowDecay, "Poisson truncation needs a rapidly decaying transform");
  }
  Int T = 0;
  while (poisson_error_bound(window, q, T) >= tol) {
    ++T;
    if (T > 1000000) throw Error(Errc::SlowDecay, "no truncation below 1e6 meets the tolerance");
  }
  return T;
}

PoissonCheck poisson_check(const SmoothWindow& window, std::span<const Complex> g_table,
                           Int truncation) {
  if (g_table.empty()) throw Error(Errc::DomainError, "g_table must be nonempty");
  if (truncation < 0) throw Error(Errc::DomainError, "truncation must be nonnegative");
  if (window.shape() != WindowShape::Gaussian) {
    throw Error(Errc::SlowDecay, "poisson_check requires a Gaussian window");
  }
  const Int q = static_cast<Int>(g_table.size());
  double g_max = 0.0;
  for (const Complex& g : g_table) g_max = std::max(g_max, std::abs(g));

  const double tail = g_max * poisson_error_bound(window, q, truncation);
  if (tail > 1e-6) {
    throw Error(Errc::SlowDecay, "transform tail bound " + std::to_string(tail) +
                                     " at truncation " + to_string(truncation));
  }

  CompensatedSum<Complex> lhs;
  for (Int n = window.first(); n <= window.last(); ++n) {
    lhs += window(static_cast<double>(n)) * g_table[static_cast<std::size_t>(floor_mod(n, q))];
  }

  // g^(-m) = (1/q) sum_{x=1}^{q} g(x) e_q(x m).
  auto g_hat_neg = [&](Int m) {
    CompensatedSum<Complex> acc;
    for (Int x = 1; x <= q; ++x) {
      acc += g_table[static_cast<std::size_t>(x % q)] * e_of(Mod1Rational(mul_mod(x, m, q), q));
    }
    return acc.value() / static_cast<double>(q);
  };

  CompensatedSum<Complex> rhs;
  const double qd = static_cast<double>(q);
  for (Int m = -truncation; m <= truncation; ++m) {
    const Complex coeff = g_hat_neg(m);
    if (std::abs(coeff) < 1e-300) continue;
    rhs += window.fourier(static_cast<double>(m) / qd) * coeff;
  }
  return {lhs.value(), rhs.value(), std::abs(lhs.value() - rhs.value()), tail};
}

}  // namespace cubesum

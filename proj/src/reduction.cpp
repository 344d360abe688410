#include "cubesum/reduction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "compensated.hpp"
#include "cubesum/gauss.hpp"

namespace cubesum {

namespace {

Int abs_int(Int v) { return v < 0 ? -v : v; }

// e_q(r) by table lookup for moderate q.
class RootTable {
 public:
  explicit RootTable(Int q) : q_(q) {
    if (q_ <= kTableLimit) {
      table_.resize(static_cast<std::size_t>(q_));
      for (Int k = 0; k < q_; ++k) table_[static_cast<std::size_t>(k)] = e_of(Mod1Rational(k, q_));
    }
  }

  Complex operator()(Int r) const {
    r = floor_mod(r, q_);
    if (!table_.empty()) return table_[static_cast<std::size_t>(r)];
    return e_of(Mod1Rational(r, q_));
  }

 private:
  static constexpr Int kTableLimit = Int(1) << 22;
  Int q_;
  std::vector<Complex> table_;
};

void check_support(const SmoothWindow& window) {
  if (window.last() - window.first() + 1 > kWindowSupportLimit) {
    throw Error(Errc::TooLarge, "window support exceeds 10^4 integers");
  }
}

std::vector<double> window_values(const SmoothWindow& window) {
  std::vector<double> values;
  for (Int n = window.first(); n <= window.last(); ++n) values.push_back(window(static_cast<double>(n)));
  return values;
}

// b m n (m + n) mod q0, the differenced quadratic-plus-linear residue.
Int differenced_residue(Int b, Int m, Int n, Int q0) {
  return mul_mod(mul_mod(b, m, q0), mul_mod(n, m + n, q0), q0);
}

}  // namespace

Int count_solutions(const CongruenceBox& box) {
  if (box.q < 1) throw Error(Errc::DomainError, "modulus must be positive");
  if (box.x_lo > box.x_hi || box.y_lo > box.y_hi) throw Error(Errc::DomainError, "empty interval");
  if (gcd(box.b, box.q) != 1) throw Error(Errc::NotCoprime, "count_solutions needs gcd(b, q) = 1");
  if (box.y_hi - box.y_lo + 1 > kCountLimit) throw Error(Errc::TooLarge, "y interval exceeds 10^7");
  Int count = 0;
  for (Int y = box.y_lo; y <= box.y_hi; ++y) {
    const Int r = mul_mod(y, box.b, box.q);
    count += floor_div(box.x_hi - r, box.q) - floor_div(box.x_lo - 1 - r, box.q);
  }
  return count;
}

double weighted_max_norm(Int ell, Int s, double weight_l, double weight_s) {
  return std::max(static_cast<double>(abs_int(ell)) / weight_l, static_cast<double>(abs_int(s)) / weight_s);
}

namespace {

struct LatticeVector {
  Int ell;
  Int s;
};

struct WeightedGram {
  long double wl2, ws2;

  long double dot(const LatticeVector& u, const LatticeVector& v) const {
    return static_cast<long double>(u.ell) * static_cast<long double>(v.ell) / wl2 +
           static_cast<long double>(u.s) * static_cast<long double>(v.s) / ws2;
  }
  long double norm(const LatticeVector& u) const { return dot(u, u); }
};

// Lagrange reduction; the vectors stay exact integers and only the rounding
// coefficient is computed in floating point. Returns (shortest, second).
std::pair<LatticeVector, LatticeVector> lagrange_reduce(LatticeVector u, LatticeVector v,
                                                        const WeightedGram& gram) {
  if (gram.norm(u) < gram.norm(v)) std::swap(u, v);
  for (int iter = 0; iter < 512; ++iter) {
    const long double mu_real = gram.dot(u, v) / gram.norm(v);
    const Int mu = static_cast<Int>(std::llround(mu_real));
    u = {u.ell - mu * v.ell, u.s - mu * v.s};
    if (gram.norm(u) >= gram.norm(v)) break;
    std::swap(u, v);
  }
  return {v, u};
}

struct Candidate {
  Int ell;
  Int s;
  double norm;
};

bool candidate_less(const Candidate& x, const Candidate& y) {
  if (x.norm != y.norm) return x.norm < y.norm;
  if (abs_int(x.s) != abs_int(y.s)) return abs_int(x.s) < abs_int(y.s);
  return x.s > y.s;
}

Int product(const Candidate& c) { return c.ell * abs_int(c.s); }

bool smaller_product(const Candidate& x, const Candidate& y) {
  if (product(x) != product(y)) return product(x) < product(y);
  return candidate_less(x, y);
}

ApproxPair make_pair(Int b, Int d, Int ell, Int s) {
  const Int diff = s * b - ell;
  if (floor_mod(diff, d) != 0) throw Error(Errc::IdentityFailed, "s b - ell is not divisible by d");
  return {ell, s, d, diff / d};
}

constexpr long double kEnumerationLimit = 4.0e6L;
constexpr Int kScanLimit = 100000000;

// Admissible lattice points i u + j v with weighted max-norm <= radius, one
// per +-pair (ell >= 1). Returns false when the coefficient box is too large.
template <typename Visit>
bool enumerate_ball(const LatticeVector& u, const LatticeVector& v, Int d, double wl, double ws, double radius,
                    const Visit& visit) {
  const WeightedGram gram{static_cast<long double>(wl) * wl, static_cast<long double>(ws) * ws};
  // |det| of the weighted basis; Cramer bounds the coefficients of x with |x|_2 <= sqrt(2) radius.
  const long double det = static_cast<long double>(d) / (static_cast<long double>(wl) * ws);
  const long double reach = std::sqrt(2.0L) * radius / det;
  const long double i_max = std::floor(std::sqrt(gram.norm(v)) * reach) + 1;
  const long double j_max = std::floor(std::sqrt(gram.norm(u)) * reach) + 1;
  if ((2 * i_max + 1) * (2 * j_max + 1) > kEnumerationLimit) return false;
  const Int im = static_cast<Int>(i_max), jm = static_cast<Int>(j_max);
  for (Int i = -im; i <= im; ++i) {
    for (Int j = -jm; j <= jm; ++j) {
      Int ell = i * u.ell + j * v.ell;
      Int s = i * u.s + j * v.s;
      if (ell <= 0) continue;  // the mirror image (-ell, -s) is visited too
      if (s == 0 || gcd(s, d) != 1) continue;
      const double norm = weighted_max_norm(ell, s, wl, ws);
      if (norm <= radius) visit(Candidate{ell, s, norm});
    }
  }
  return true;
}

// Every s with gcd(s, d) = 1 pairs with ell = s b mod d >= 1; |s| <= d/2 suffices.
template <typename Visit>
void scan_all(Int br, Int d, double wl, double ws, const Visit& visit) {
  if (d > kScanLimit) throw Error(Errc::TooLarge, "exhaustive short_approx scan limited to d <= 10^8");
  for (Int s = -d / 2; s <= d / 2; ++s) {
    if (s == 0 || gcd(s, d) != 1) continue;
    const Int ell = mul_mod(s, br, d);
    visit(Candidate{ell, s, weighted_max_norm(ell, s, wl, ws)});
  }
}

}  // namespace

ApproxPair short_approx(Int b, Int d, double weight_l, double weight_s) {
  if (d < 2) throw Error(Errc::DomainError, "short_approx needs d >= 2");
  if (!(weight_l > 0.0) || !(weight_s > 0.0)) throw Error(Errc::DomainError, "weights must be positive");
  if (gcd(b, d) != 1) throw Error(Errc::NotCoprime, "short_approx needs gcd(b, d) = 1");
  const Int br = floor_mod(b, d);

  const WeightedGram gram{static_cast<long double>(weight_l) * weight_l,
                          static_cast<long double>(weight_s) * weight_s};
  const auto [shortest, second] = lagrange_reduce({br, 1}, {d, 0}, gram);

  // Grow the radius until an admissible point shows up; the minimum inside
  // the ball is then the exact optimum.
  std::optional<Candidate> best;
  auto keep_best = [&](const Candidate& c) {
    if (!best || candidate_less(c, *best)) best = c;
  };
  bool enumerated = true;
  double radius = std::max(weighted_max_norm(shortest.ell, shortest.s, weight_l, weight_s),
                           weighted_max_norm(second.ell, second.s, weight_l, weight_s));
  while (!best && enumerated) {
    enumerated = enumerate_ball(shortest, second, d, weight_l, weight_s, radius, keep_best);
    radius *= 2.0;
  }
  if (!best) scan_all(br, d, weight_l, weight_s, keep_best);
  if (!best) throw Error(Errc::NoPair, "no admissible pair");
  if (product(*best) <= 4 * d) return make_pair(b, d, best->ell, best->s);

  // The optimum is long in both coordinates; trade up to a factor 2 in the
  // norm for the smallest ell |s|.
  Candidate pick = *best;
  const double limit = 2.0 * best->norm;
  auto keep_small = [&](const Candidate& c) {
    if (c.norm <= limit && smaller_product(c, pick)) pick = c;
  };
  if (!enumerated || !enumerate_ball(shortest, second, d, weight_l, weight_s, limit, keep_small)) {
    scan_all(br, d, weight_l, weight_s, keep_small);
  }
  return make_pair(b, d, pick.ell, pick.s);
}

DifferencingModulus differencing_modulus(const CubicPhase& phase) {
  const Int g = gcd(phase.q(), 3);
  return {phase.q() / g, g == 1 ? 3 * phase.a() : phase.a()};
}

DifferenceIdentity weyl_difference_identity(const CubicPhase& phase, const SmoothWindow& window) {
  check_support(window);
  const auto [q0, b] = differencing_modulus(phase);
  const RootTable roots(q0);
  const std::vector<double> f = window_values(window);
  const Int lo = window.first();
  const Int len = static_cast<Int>(f.size());

  const double lhs = std::norm(smooth_weyl_sum(phase, window).value);

  CompensatedSum<Complex> rhs;
  for (Int m = -(len - 1); m <= len - 1; ++m) {
    CompensatedSum<Complex> inner;
    for (Int i = std::max<Int>(0, -m); i < std::min(len, len - m); ++i) {
      const double w = f[static_cast<std::size_t>(i + m)] * f[static_cast<std::size_t>(i)];
      if (w == 0.0) continue;
      inner += w * roots(differenced_residue(b, m, lo + i, q0));
    }
    rhs += e_of(phase.phase_at(m)) * inner.value();
  }
  const Complex r = rhs.value();
  return {lhs, r, std::abs(lhs - r)};
}

DPartition d_partition(const CubicPhase& phase, const SmoothWindow& window) {
  check_support(window);
  const auto [q0, b] = differencing_modulus(phase);
  const std::vector<Int> divs = divisors(q0);
  if (divs.size() > 100) throw Error(Errc::TooLarge, "q0 has more than 100 divisors");

  const std::vector<double> f = window_values(window);
  const Int lo = window.first();
  const Int len = static_cast<Int>(f.size());
  const Int N = window.N();
  auto f_at = [&](Int n) {
    const Int i = n - lo;
    return (i < 0 || i >= len) ? 0.0 : f[static_cast<std::size_t>(i)];
  };

  DPartition out{q0, b, {}, {}};

  // Direct route over 1 <= |m| <= N.
  const RootTable roots_q0(q0);
  CompensatedSum<Complex> total;
  for (Int m = -N; m <= N; ++m) {
    if (m == 0) continue;
    CompensatedSum<Complex> inner;
    for (Int n = lo; n <= window.last(); ++n) {
      const double w = f_at(m + n) * f_at(n);
      if (w == 0.0) continue;
      inner += w * roots_q0(differenced_residue(b, m, n, q0));
    }
    total += e_of(phase.phase_at(m)) * inner.value();
  }
  out.total = total.value();

  // Rescaled route: m = (q0/d) m', F_{d,m}(n) = f(m + n) f(n), and the inner
  // phase split as e(rho_m n) e_d(b m' n^2) with rho_m = b m^2 / q0.
  for (Int d : divs) {
    const RootTable roots_d(d);
    const Int step = q0 / d;
    const Int m_max = floor_div(d * N, q0);
    CompensatedSum<Complex> part;
    for (Int mp = -m_max; mp <= m_max; ++mp) {
      if (mp == 0 || gcd(mp, d) != 1) continue;
      const Int m = step * mp;
      const Int rho_num = mul_mod(b, mul_mod(m, m, q0), q0);
      CompensatedSum<Complex> inner;
      for (Int n = lo; n <= window.last(); ++n) {
        const double w = f_at(m + n) * f_at(n);
        if (w == 0.0) continue;
        const Complex linear = roots_q0(mul_mod(rho_num, n, q0));
        const Complex quadratic = roots_d(mul_mod(mul_mod(b, mp, d), mul_mod(n, n, d), d));
        inner += w * (linear * quadratic);
      }
      part += e_of(phase.phase_at(m)) * inner.value();
    }
    out.parts[d] = part.value();
  }
  return out;
}

DualSums dual_sum(const CubicPhase& phase, Int d, const ApproxPair& pair, Int s1, Int Y, Int N) {
  const auto [q0, b] = differencing_modulus(phase);
  const Int q = phase.q();
  if (d < 1 || q0 % d != 0) throw Error(Errc::ConditionViolated, "d must divide q0");
  if (pair.d != d) throw Error(Errc::ConditionViolated, "pair was built for a different d");
  if (pair.ell <= 0) throw Error(Errc::ConditionViolated, "ell must be positive");
  if (pair.s == 0 || s1 == 0 || pair.s % s1 != 0) throw Error(Errc::ConditionViolated, "s1 must divide s");
  if (gcd(pair.s, d) != 1) throw Error(Errc::ConditionViolated, "gcd(s, d) must be 1");
  if (pair.s * b != pair.ell + pair.t * d) throw Error(Errc::ConditionViolated, "s b != ell + t d");
  if (Y < 1 || N < 1) throw Error(Errc::ConditionViolated, "Y and N must be positive");

  DualSums out;
  const Int s2 = pair.s / s1;
  const Int step = q0 / d;
  // dY/(q0 |s1|) <= |m| <= dN/(q0 |s1|) in exact integer arithmetic.
  const Int denom = q0 * abs_int(s1);
  const Int m_lo = std::max<Int>(1, (d * Y + denom - 1) / denom);
  const Int m_hi = (d * N) / denom;
  const Int phase_mod = 4 * q;

  CompensatedSum<Complex> sum1, sum2;
  for (Int mag = m_lo; mag <= m_hi; ++mag) {
    for (Int m : {mag, -mag}) {
      if (gcd(m, q0) != 1 || gcd(m, pair.s) != 1) continue;
      const Int modulus = abs_int(pair.ell * m);
      const Int bm_mod_q = floor_mod(b * m, q);
      if (gcd(d, modulus) != 1 || gcd(bm_mod_q, q) != 1) {
        ++out.skipped;
        continue;
      }
      ++out.terms;
      // x = q0 s1 m / d is an integer; outer phase a x^3 / (4q).
      const Int x = step * s1 * m;
      const Int x_res = floor_mod(x, phase_mod);
      const Int cube = mul_mod(mul_mod(x_res, x_res, phase_mod), x_res, phase_mod);
      const Complex outer = e_of(Mod1Rational(mul_mod(phase.a(), cube, phase_mod), phase_mod));

      const Int dbar = mod_inverse(d, modulus);
      const Int shift = s1 * pair.t * step * m * m;
      const Int lead = s2 * dbar;
      const double scale = 1.0 / static_cast<double>(m * pair.ell);

      const Complex g1 = gauss_eval(b * s1 * m, 0, d);
      const Complex g2 = gauss_eval(lead, -shift, modulus);
      sum1 += outer * g1 * g2 * scale;

      const Int bm_inv = mod_inverse(bm_mod_q, q);
      const Complex g3 = gauss_eval(bm_inv, bm_inv, q);
      const Complex g4 = gauss_eval(lead, lead - shift, modulus);
      sum2 += outer * g3 * g4 * scale;
    }
  }
  out.s1 = sum1.value();
  out.s2 = sum2.value();
  return out;
}

MdValue compute_md(const ApproxPair& pair, Int d, Int q0, Int Y, Int N, double eps) {
  if (pair.ell <= 0 || d <= 0 || q0 <= 0 || Y <= 0 || N <= 0) {
    throw Error(Errc::DomainError, "compute_md inputs must be positive");
  }
  const double dd = static_cast<double>(d);
  const double first = std::sqrt(static_cast<double>(abs_int(pair.s)) * static_cast<double>(q0) /
                                 (static_cast<double>(pair.ell) * dd * dd * static_cast<double>(Y)));
  const double second = static_cast<double>(N) / dd;
  const double md = std::max(first, second);
  const double condition =
      static_cast<double>(pair.ell) * dd * md * md * std::pow(static_cast<double>(N), 11.0 * eps);
  return {md, condition, condition <= 1.0};
}

}  // namespace cubesum

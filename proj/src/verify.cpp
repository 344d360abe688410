#include "cubesum/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "cubesum/expsum.hpp"
#include "cubesum/gauss.hpp"
#include "cubesum/reduction.hpp"

namespace cubesum {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& context) {
    ++result_.checks;
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = context;
      ++result_.failures;
    }
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

std::string describe(std::initializer_list<std::pair<const char*, Int>> fields) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : fields) {
    out << (first ? "" : " ") << k << '=' << to_string(v);
    first = false;
  }
  return out.str();
}

Int random_in(std::mt19937_64& rng, Int lo, Int hi) {
  return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

SuiteResult verify_gauss(Int cap) {
  Tally tally("gauss");
  for (Int q = 1; q <= cap; ++q) {
    const double scale = std::sqrt(static_cast<double>(q));
    for (Int a = 0; a < q; ++a) {
      if (gcd(a, q) != 1) continue;
      for (Int ell = 0; ell < q; ++ell) {
        const GaussParams p(a, ell, q);
        const Complex closed = gauss_closed(p).to_complex();
        const Complex brute = gauss_brute(p);
        tally.check(std::abs(closed - brute) <= 1e-9 * scale,
                    "closed != brute at " + describe({{"a", a}, {"ell", ell}, {"q", q}}));
      }
      if (q % 2 == 1) {
        tally.check(std::abs(std::abs(gauss_brute(GaussParams(a, 0, q))) - scale) <= 1e-9 * scale,
                    "|G(a,0;q)| != sqrt(q) at " + describe({{"a", a}, {"q", q}}));
      }
      if (q % 4 == 2) {
        tally.check(std::abs(gauss_brute(GaussParams(a, 0, q))) < 1e-9,
                    "G(a,0;q) != 0 for q = 2 mod 4 at " + describe({{"a", a}, {"q", q}}));
        const Int half = q / 2;
        const Complex lhs = gauss_brute(GaussParams(a, a, q));
        const Complex rhs = 2.0 * gauss_brute(GaussParams(2 * a, a, half));
        tally.check(std::abs(lhs - rhs) <= 1e-9 * scale,
                    "G(a,a;2q) != 2 G(2a,a;q) at " + describe({{"a", a}, {"q", half}}));
      }
      if (q % 4 == 0) {
        for (Int ell = 1; ell < q; ell += 2) {
          tally.check(std::abs(gauss_brute(GaussParams(a, ell, q))) < 1e-9,
                      "G(a,odd;4k) != 0 at " + describe({{"a", a}, {"ell", ell}, {"q", q}}));
        }
      }
    }
  }
  return tally.result();
}

SuiteResult verify_reciprocity(Int cap, std::uint64_t seed) {
  Tally tally("reciprocity");
  for (Int p = 1; p <= cap; p += 2) {
    for (Int q = 1; q <= cap; q += 2) {
      if (gcd(p, q) != 1) continue;
      const int expected = (((p - 1) / 2) * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
      tally.check(jacobi(p, q) * jacobi(q, p) == expected,
                  "quadratic reciprocity fails at " + describe({{"p", p}, {"q", q}}));
    }
    const int two = ((p * p - 1) / 8) % 2 == 0 ? 1 : -1;
    tally.check(jacobi(2, p) == two, "(2/q) formula fails at " + describe({{"q", p}}));
  }
  for (Int m = 1; m <= cap; ++m) {
    for (Int a = 0; a < m; ++a) {
      if (gcd(a, m) != 1) continue;
      tally.check(floor_mod(a * mod_inverse(a, m), m) == floor_mod(1, m),
                  "mod_inverse fails at " + describe({{"a", a}, {"m", m}}));
    }
  }
  std::mt19937_64 rng(seed);
  const Int pairs = std::min<Int>(100000, cap * cap);
  for (Int i = 0; i < pairs; ++i) {
    const Int a = random_in(rng, 1, std::max<Int>(cap, 2) * 100);
    const Int b = random_in(rng, 1, std::max<Int>(cap, 2) * 100);
    if (gcd(a, b) != 1) continue;
    bool ok = true;
    try {
      inverse_reciprocity(a, b);
    } catch (const Error&) {
      ok = false;
    }
    tally.check(ok, "inverse reciprocity fails at " + describe({{"a", a}, {"b", b}}));
  }
  return tally.result();
}

SuiteResult verify_identities(Int cap, std::uint64_t seed) {
  Tally tally("identities");
  std::mt19937_64 rng(seed ^ 0x1d3a7ULL);
  const Int q_max = std::max<Int>(cap, 3);

  // Differencing identity and divisor partition on small random instances.
  for (int i = 0; i < 20; ++i) {
    const Int q = random_in(rng, 2, q_max);
    Int a = random_in(rng, 1, q);
    while (gcd(a, q) != 1) a = random_in(rng, 1, q);
    const double gamma = static_cast<double>(rng() % 1000) / 1000.0;
    const Int N = random_in(rng, 4, std::min<Int>(q_max, 200));
    const CubicPhase phase(a, q, gamma);
    const SmoothWindow window = SmoothWindow::bump(N);
    const DifferenceIdentity id = weyl_difference_identity(phase, window);
    tally.check(id.discrepancy < 1e-8 * id.lhs + 1e-10,
                "differencing identity fails at " + describe({{"a", a}, {"q", q}, {"N", N}}));
    const DPartition part = d_partition(phase, window);
    Complex sum{};
    for (const auto& [d, v] : part.parts) sum += v;
    tally.check(std::abs(sum - part.total) <= 1e-8 * std::max(1.0, std::abs(part.total)),
                "d-partition fails at " + describe({{"a", a}, {"q", q}, {"N", N}}));
  }

  // Short approximations satisfy the congruence and s b = ell + t d.
  for (int i = 0; i < 200; ++i) {
    const Int d = random_in(rng, 2, std::max<Int>(cap * 10, 10));
    Int b = random_in(rng, 1, d);
    while (gcd(b, d) != 1) b = random_in(rng, 1, d);
    const double w = std::sqrt(static_cast<double>(d));
    const ApproxPair pair = short_approx(b, d, w, w);
    const bool ok = pair.ell >= 1 && gcd(pair.s, d) == 1 && pair.s * b == pair.ell + pair.t * d &&
                    floor_mod(b - pair.ell * mod_inverse(pair.s, d), d) == 0;
    tally.check(ok, "short_approx identity fails at " + describe({{"b", b}, {"d", d}}));
  }

  // Full period boxes have exactly q solutions.
  for (Int q = 1; q <= std::min<Int>(cap, 200); ++q) {
    const Int b = q == 1 ? 1 : (q % 2 == 0 ? q - 1 : 2);
    tally.check(count_solutions({b, q, 0, q - 1, 0, q - 1}) == q,
                "full-period count != q at " + describe({{"b", b}, {"q", q}}));
  }

  // Complete sums vanish for squarefree q with gcd(3, phi(q)) = 1.
  for (Int q = 2; q <= cap; ++q) {
    bool eligible = true;
    Int phi = 1;
    for (const auto& [p, e] : factorize(q)) {
      if (e > 1) eligible = false;
      phi *= p - 1;
    }
    if (!eligible || phi % 3 == 0) continue;
    tally.check(std::abs(weyl_sum(CubicPhase(1, q), q).value) < 1e-9,
                "complete cubic sum does not vanish at " + describe({{"q", q}}));
  }
  return tally.result();
}

SuiteResult verify_poisson(Int cap, std::uint64_t seed) {
  Tally tally("poisson");
  std::mt19937_64 rng(seed ^ 0x9e37ULL);
  const Int q_max = std::clamp<Int>(cap, 1, 50);
  const Int n_max = std::clamp<Int>(10 * cap, 50, 500);
  for (int i = 0; i < 20; ++i) {
    const Int q = random_in(rng, 1, q_max);
    const Int N = random_in(rng, 50, n_max);
    Int a = random_in(rng, 1, q);
    while (gcd(a, q) != 1) a = random_in(rng, 1, q);
    std::vector<Complex> table(static_cast<std::size_t>(q));
    for (Int x = 0; x < q; ++x) table[static_cast<std::size_t>(x)] = e_of(Mod1Rational(a * x * x * x, q));
    const SmoothWindow window = SmoothWindow::gaussian(N);
    bool ok = false;
    try {
      const PoissonCheck pc = poisson_check(window, table, poisson_truncation(window, q));
      ok = pc.discrepancy < 1e-6;
    } catch (const Error&) {
      ok = false;
    }
    tally.check(ok, "Poisson summation fails at " + describe({{"a", a}, {"q", q}, {"N", N}}));
  }
  return tally.result();
}

std::vector<SuiteResult> run_verify(const std::string& suite, Int cap, std::uint64_t seed) {
  if (cap < 1) throw Error(Errc::DomainError, "cap must be positive");
  const bool all = suite == "all";
  if (!all && suite != "gauss" && suite != "reciprocity" && suite != "identities" && suite != "poisson") {
    throw Error(Errc::DomainError, "unknown suite '" + suite + "'");
  }
  std::vector<SuiteResult> out;
  if (all || suite == "gauss") out.push_back(verify_gauss(cap));
  if (all || suite == "reciprocity") out.push_back(verify_reciprocity(cap, seed));
  if (all || suite == "identities") out.push_back(verify_identities(cap, seed));
  if (all || suite == "poisson") out.push_back(verify_poisson(cap, seed));
  return out;
}

}  // namespace cubesum

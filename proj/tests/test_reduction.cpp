#include <doctest.h>

#include <cmath>
#include <random>

#include "cubesum/error.hpp"
#include "cubesum/reduction.hpp"
#include "oracles.hpp"

using namespace cubesum;

TEST_CASE("count_solutions examples") {
  CHECK(count_solutions({1, 5, 0, 4, 0, 4}) == 5);
  CHECK(count_solutions({1, 7, 0, 0, 0, 0}) == 1);
  CHECK(count_solutions({3, 7, 0, 1, 0, 6}) == 2);
  CHECK_THROWS_AS(count_solutions({3, 7, 5, 4, 0, 6}), Error);
  CHECK_THROWS_AS(count_solutions({2, 4, 0, 1, 0, 1}), Error);
  CHECK_THROWS_AS(count_solutions({1, 1, 0, 0, 0, kCountLimit}), Error);
}

TEST_CASE("count_solutions matches brute force") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const oracle::LL q = 1 + static_cast<oracle::LL>(rng() % 60);
    oracle::LL b = static_cast<oracle::LL>(rng() % 200) - 100;
    while (oracle::gcd(b, q) != 1) b = static_cast<oracle::LL>(rng() % 200) - 100;
    const oracle::LL x_lo = static_cast<oracle::LL>(rng() % 100) - 50;
    const oracle::LL y_lo = static_cast<oracle::LL>(rng() % 100) - 50;
    const oracle::LL x_hi = x_lo + static_cast<oracle::LL>(rng() % 80);
    const oracle::LL y_hi = y_lo + static_cast<oracle::LL>(rng() % 80);
    INFO("b=", b, " q=", q);
    CHECK(count_solutions({b, q, x_lo, x_hi, y_lo, y_hi}) == oracle::count_box(b, q, x_lo, x_hi, y_lo, y_hi));
  }
}

TEST_CASE("short_approx examples") {
  for (Int d : {5, 64, 1001}) {
    const double w = std::sqrt(static_cast<double>(d));
    const ApproxPair one = short_approx(1, d, w, w);
    CHECK(one.ell == 1);
    CHECK(one.s == 1);
    CHECK(one.t == 0);
    const ApproxPair minus = short_approx(d - 1, d, w, w);
    CHECK(minus.ell == 1);
    CHECK(minus.s == -1);
    CHECK(minus.t == -1);
  }
  const ApproxPair seven = short_approx(7, 100, 10, 10);
  CHECK(seven.ell == 7);
  CHECK(seven.s == 1);
  CHECK(seven.t == 0);
  CHECK(seven.d == 100);
  CHECK_THROWS_AS(short_approx(2, 4, 1, 1), Error);
  CHECK_THROWS_AS(short_approx(1, 1, 1, 1), Error);
}

TEST_CASE("short_approx is within a factor 2 of the optimum") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const oracle::LL d = 2 + static_cast<oracle::LL>(rng() % 3000);
    oracle::LL b = 1 + static_cast<oracle::LL>(rng() % static_cast<std::uint64_t>(d));
    while (oracle::gcd(b, d) != 1) b = 1 + static_cast<oracle::LL>(rng() % static_cast<std::uint64_t>(d));
    const double u = static_cast<double>(rng() % 1000) / 1000.0;
    const double wl = std::pow(static_cast<double>(d), u);
    const double ws = static_cast<double>(d) / wl;
    const ApproxPair p = short_approx(b, d, wl, ws);
    INFO("b=", b, " d=", d, " wl=", wl);
    CHECK(p.ell >= 1);
    CHECK(p.s * b == p.ell + p.t * d);
    CHECK(oracle::gcd(static_cast<oracle::LL>(p.s), d) == 1);
    const double best = static_cast<double>(oracle::best_short_norm(b, d, wl, ws));
    CHECK(weighted_max_norm(p.ell, p.s, wl, ws) <= 2.0 * best);
  }
}

TEST_CASE("differencing modulus") {
  const auto m7 = differencing_modulus(CubicPhase(2, 7));
  CHECK(m7.q0 == 7);
  CHECK(m7.b == 6);
  const auto m27 = differencing_modulus(CubicPhase(2, 27));
  CHECK(m27.q0 == 9);
  CHECK(m27.b == 2);
}

TEST_CASE("Weyl differencing identity") {
  const SmoothWindow w16 = SmoothWindow::bump(16);
  const auto flat = weyl_difference_identity(CubicPhase(1, 1), w16);
  double mass = 0.0;
  for (Int n = 16; n <= 32; ++n) mass += w16(static_cast<double>(n));
  CHECK(flat.lhs == doctest::Approx(mass * mass));
  CHECK(flat.discrepancy < 1e-9);

  CHECK(weyl_difference_identity(CubicPhase(1, 9), w16).discrepancy < 1e-8);
  const auto g = weyl_difference_identity(CubicPhase(2, 27, 0.3), SmoothWindow::bump(30));
  CHECK(g.discrepancy < 1e-8 * std::max(1.0, g.lhs));
  CHECK(std::abs(g.rhs.imag()) < 1e-9);
  CHECK_THROWS_AS(weyl_difference_identity(CubicPhase(1, 5), SmoothWindow::bump(20000)), Error);
}

TEST_CASE("divisor partition") {
  const auto prime = d_partition(CubicPhase(3, 101, 0.1), SmoothWindow::bump(40));
  CHECK(prime.parts.size() == 2);
  CHECK(prime.parts.count(1) == 1);
  CHECK(prime.parts.count(101) == 1);

  for (Int q : {54, 60, 125, 210}) {
    const auto part = d_partition(CubicPhase(11, q, 0.37), SmoothWindow::bump(45));
    Complex sum{};
    for (const auto& [d, v] : part.parts) sum += v;
    INFO("q=", to_string(q));
    CHECK(std::abs(sum - part.total) < 1e-9 * std::max(1.0, std::abs(part.total)));
  }

  // The nonzero shifts of the differenced sum add up to |S|^2 minus the diagonal.
  const SmoothWindow w = SmoothWindow::bump(45);
  const CubicPhase p(7, 60, 0.37);
  const auto id = weyl_difference_identity(p, w);
  double diagonal = 0.0;
  for (Int n = 45; n <= 90; ++n) diagonal += std::pow(w(static_cast<double>(n)), 2);
  CHECK(std::abs(d_partition(p, w).total + diagonal - id.rhs) < 1e-9 * id.lhs + 1e-9);
}

TEST_CASE("compute_md") {
  const ApproxPair unit{1, 1, 31, 0};
  const auto v = compute_md(unit, 31, 31, 10, 10);
  CHECK(v.md == doctest::Approx(std::max(std::sqrt(1.0 / (31.0 * 10.0)), 10.0 / 31.0)));
  CHECK(v.condition == doctest::Approx(31.0 * v.md * v.md));

  const auto tiny = compute_md(unit, 31, 31, 100, 10);
  CHECK(tiny.md == doctest::Approx(10.0 / 31.0));
  CHECK_THROWS_AS(compute_md(unit, 31, 31, 0, 10), Error);
}

TEST_CASE("dual sums") {
  const CubicPhase p(1, 25);
  const auto [q0, b] = differencing_modulus(p);
  const ApproxPair pair{b, 1, q0, 0};
  REQUIRE(pair.s * b == pair.ell + pair.t * pair.d);

  const DualSums empty = dual_sum(p, q0, pair, 1, 1000, 12);
  CHECK(empty.s1 == Complex{});
  CHECK(empty.s2 == Complex{});
  CHECK(empty.terms == 0);

  const DualSums s = dual_sum(p, q0, pair, 1, 6, 12);
  CHECK(std::isfinite(std::abs(s.s1)));
  CHECK(std::isfinite(std::abs(s.s2)));
  CHECK(s.terms > 0);
  // |G(b s1 m, 0; d)| <= sqrt(2d), |G(., .; l m)| <= sqrt(2 l m), both signs of m.
  double bound = 0.0;
  const double ell = static_cast<double>(pair.ell);
  for (Int m = 6; m <= 12; ++m) {
    if (gcd(m, q0) != 1) continue;
    const double md = static_cast<double>(m);
    bound += 2.0 / (md * ell) * std::sqrt(2.0 * static_cast<double>(q0)) * std::sqrt(2.0 * ell * md);
  }
  CHECK(std::abs(s.s1) <= bound);

  const ApproxPair trivial{1, 1, 1, b - 1};
  const DualSums d1 = dual_sum(p, 1, trivial, 1, 1, 100);
  CHECK(d1.terms > 0);

  const ApproxPair broken{b + 1, 1, q0, 0};
  CHECK_THROWS_AS(dual_sum(p, q0, broken, 1, 6, 12), Error);
  CHECK_THROWS_AS(dual_sum(p, 7, pair, 1, 6, 12), Error);
}

#include <doctest.h>

#include <cmath>

#include "cubesum/error.hpp"
#include "cubesum/gauss.hpp"
#include "oracles.hpp"

using namespace cubesum;

namespace {

double dist(Complex z, oracle::CLD w) {
  return std::abs(Complex(static_cast<double>(w.real()), static_cast<double>(w.imag())) - z);
}

}  // namespace

TEST_CASE("spot values") {
  CHECK(std::abs(gauss_brute({1, 0, 4}) - Complex(2, 2)) < 1e-12);
  CHECK(std::abs(gauss_brute({1, 0, 3}) - Complex(0, std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(gauss_brute({1, 0, 6})) < 1e-12);

  const GaussValue g5 = gauss_closed({1, 0, 5});
  CHECK(g5.sign == 1);
  CHECK(g5.unit == UnitFactor::One);
  CHECK(g5.phase.is_zero());
  CHECK(std::abs(g5.to_complex() - Complex(std::sqrt(5.0), 0)) < 1e-12);

  CHECK(std::abs(gauss_closed({1, 0, 4}).to_complex() - Complex(2, 2)) < 1e-12);
  CHECK(gauss_closed({1, 0, 6}).is_zero());
  CHECK(gauss_closed({3, 7, 80}).is_zero());
  CHECK(dist(gauss_closed({1, 2, 5}).to_complex(), oracle::gauss(1, 2, 5)) < 1e-12);
}

TEST_CASE("closed form matches the oracle for q <= 64") {
  for (oracle::LL q = 1; q <= 64; ++q) {
    for (oracle::LL a = 0; a < q; ++a) {
      if (oracle::gcd(a, q) != 1) continue;
      for (oracle::LL l = 0; l < q; ++l) {
        INFO("a=", a, " l=", l, " q=", q);
        const auto ref = oracle::gauss(a, l, q);
        CHECK(dist(gauss_closed({a, l, q}).to_complex(), ref) < 1e-9 * std::sqrt(double(q)));
        CHECK(dist(gauss_brute({a, l, q}), ref) < 1e-9 * std::sqrt(double(q)));
      }
    }
  }
}

TEST_CASE("closed form on large moduli") {
  for (Int q : {Int(1000003), Int(1) << 20, Int(2) * 1000003, Int(999983) * 4}) {
    const Int a = 12345;
    for (Int l : {Int(0), Int(1), Int(2), Int(777)}) {
      const Complex closed = gauss_closed({a, l, q}).to_complex();
      const double mag = std::abs(closed);
      const double rq = std::sqrt(static_cast<double>(q));
      CHECK((mag < 1e-9 || std::abs(mag - rq) < 1e-6 || std::abs(mag - rq * std::sqrt(2.0)) < 1e-6));
      if (q <= kGaussOracleLimit) CHECK(std::abs(closed - gauss_brute({a, l, q})) < 1e-9 * rq);
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(gauss_closed({2, 0, 4}), Error);
  CHECK_THROWS_AS(gauss_brute({1, 0, kGaussOracleLimit + 1}), Error);
  CHECK_THROWS_AS(GaussParams(1, 0, 0), Error);
  CHECK_THROWS_AS(gauss_mult_check(1, 0, 4, 6), Error);
  // Non-coprime a falls back to direct summation.
  CHECK(std::abs(gauss_eval(2, 0, 6) - gauss_brute({2, 0, 6})) < 1e-12);
}

TEST_CASE("completing the square") {
  const CompletedSquare trivial = complete_square_reduce({3, 0, 7});
  CHECK(trivial.phase.is_zero());
  CHECK(trivial.reduced.ell == 0);
  CHECK(trivial.reduced.a == 3);

  struct Case {
    oracle::LL a, l, q;
  };
  for (const auto& [a, l, q] : {Case{1, 2, 5}, Case{2, 3, 9}, Case{5, 6, 16}, Case{3, 1, 10}}) {
    INFO("a=", a, " l=", l, " q=", q);
    const CompletedSquare c = complete_square_reduce({a, l, q});
    const Complex rebuilt = e_of(c.phase) * gauss_brute(c.reduced);
    CHECK(dist(rebuilt, oracle::gauss(a, l, q)) < 1e-9);
  }
  // 2^-1 exists only for odd q.
  CHECK_THROWS_AS(complete_square_reduce({1, 2, 8}, CompletionPath::Odd), Error);
}

TEST_CASE("multiplicativity") {
  const auto trivial = gauss_mult_check(1, 0, 1, 11);
  CHECK(std::abs(trivial.lhs - trivial.rhs) < 1e-12);
  CHECK(std::abs(trivial.lhs - gauss_brute({1, 0, 11})) < 1e-12);

  const auto c15 = gauss_mult_check(1, 0, 3, 5);
  CHECK(std::abs(c15.lhs - c15.rhs) < 1e-12);
  CHECK(std::abs(c15.rhs - gauss_brute({3, 0, 5}) * gauss_brute({5, 0, 3})) < 1e-12);

  const auto c36 = gauss_mult_check(2, 1, 4, 9);
  CHECK(std::abs(c36.lhs - c36.rhs) < 1e-9 * 6);
}

TEST_CASE("GaussValue rendering") {
  CHECK(unit_name(UnitFactor::OnePlusI) == "1+i");
  CHECK(std::abs(unit_value(UnitFactor::MinusI) - Complex(0, -1)) == 0.0);
  CHECK(!gauss_closed({1, 0, 3}).str().empty());
}

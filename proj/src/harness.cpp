#include "cubesum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "compensated.hpp"

namespace cubesum {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection; mt19937_64 output is fixed by
// the standard, std::uniform_int_distribution is not.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double weyl_bound(Int N, Int q, double eps) {
  if (N < 1 || q < 1) throw Error(Errc::DomainError, "weyl_bound needs N, q >= 1");
  const double n = static_cast<double>(N);
  const double qd = static_cast<double>(q);
  return std::pow(n, 1.0 + eps) * std::pow(1.0 / qd + 1.0 / n + qd / (n * n * n), 0.25);
}

Int n_from_theta(Int q, double theta) {
  const double raw = std::pow(static_cast<double>(q), theta);
  return std::max<Int>(1, static_cast<Int>(std::floor(raw + 1e-9)));
}

std::vector<Int> sample_coprime(Int q, int count, std::uint64_t seed) {
  if (q < 1) throw Error(Errc::DomainError, "q must be positive");
  std::set<Int> chosen{1};
  if (q > 2) chosen.insert(q - 1);
  if (q > 4 && count > 0) {
    std::vector<Int> pool;
    const bool enumerate = q <= 4 * static_cast<Int>(count) + 16;
    if (enumerate) {
      for (Int a = 2; a <= q - 2; ++a) {
        if (gcd(a, q) == 1) pool.push_back(a);
      }
    }
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(q))));
    if (enumerate && pool.size() <= static_cast<std::size_t>(count)) {
      chosen.insert(pool.begin(), pool.end());
    } else if (enumerate) {
      // Partial Fisher-Yates.
      for (int i = 0; i < count; ++i) {
        const std::size_t j = i + uniform_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        chosen.insert(pool[i]);
      }
    } else {
      std::set<Int> extra;
      while (static_cast<int>(extra.size()) < count) {
        const Int a = 2 + static_cast<Int>(uniform_below(rng, static_cast<std::uint64_t>(q - 3)));
        if (gcd(a, q) == 1) extra.insert(a);
      }
      chosen.insert(extra.begin(), extra.end());
    }
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<Int> seeded_primes(Int lo, Int hi, int count, std::uint64_t seed) {
  if (lo > hi || count < 0) throw Error(Errc::ConfigError, "bad prime range");
  std::vector<Int> all;
  const bool enumerate = hi - lo <= 2000000;
  if (enumerate) {
    for (Int n = std::max<Int>(lo, 2); n <= hi; ++n) {
      if (is_prime(n)) all.push_back(n);
    }
    if (count == 0 || all.size() <= static_cast<std::size_t>(count)) return all;
  }
  std::mt19937_64 rng(splitmix64(seed));
  std::set<Int> chosen;
  if (enumerate) {
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i + uniform_below(rng, all.size() - i);
      std::swap(all[i], all[j]);
      chosen.insert(all[i]);
    }
  } else {
    int attempts = 0;
    while (static_cast<int>(chosen.size()) < count) {
      if (++attempts > 100 * count + 1000) throw Error(Errc::ConfigError, "too few primes in range");
      const Int n = lo + static_cast<Int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
      if (is_prime(n)) chosen.insert(n);
    }
  }
  return {chosen.begin(), chosen.end()};
}

SweepResult sweep(const SweepGrid& grid) {
  if (grid.q_values.empty() || grid.thetas.empty() || grid.gammas.empty()) {
    throw Error(Errc::ConfigError, "empty sweep grid");
  }
  struct WorkItem {
    Int q, N, a;
    double gamma;
  };
  std::vector<WorkItem> items;
  std::vector<Int> qs = grid.q_values;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<double> gammas = grid.gammas;
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  for (Int q : qs) {
    if (q < 1) throw Error(Errc::ConfigError, "q must be positive");
    std::vector<Int> ns;
    for (double theta : grid.thetas) ns.push_back(n_from_theta(q, theta));
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    const std::vector<Int> as = sample_coprime(q, grid.a_samples, grid.seed);
    for (Int N : ns) {
      for (Int a : as) {
        for (double gamma : gammas) items.push_back({q, N, a, gamma});
      }
    }
  }

  SweepResult result;
  result.records.resize(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const WorkItem& w = items[i];
      const SumValue s = weyl_sum(CubicPhase(w.a, w.q, w.gamma), w.N);
      double abs_sum = std::abs(s.value);
      // Below the rounding budget the sum is indistinguishable from zero.
      if (abs_sum <= s.err_bound) abs_sum = 0.0;
      SweepRecord r;
      r.q = w.q;
      r.N = w.N;
      r.a = w.a;
      r.gamma = w.gamma;
      r.abs_sum = abs_sum;
      r.ratio = abs_sum / std::pow(static_cast<double>(w.q) * static_cast<double>(w.N), 0.25);
      r.weyl_bound = weyl_bound(w.N, w.q, grid.epsilon);
      r.exponent = (abs_sum > 0.0 && w.q > 1) ? std::log(abs_sum) / std::log(static_cast<double>(w.q)) : 0.0;
      r.exceeds_trivial = abs_sum > static_cast<double>(w.N) + s.err_bound;
      r.exceeds_weyl = abs_sum > grid.weyl_constant * r.weyl_bound;
      result.records[i] = r;
    }
  };
  const unsigned threads = std::max(1u, grid.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const SweepRecord& r : result.records) {
    if (r.exceeds_trivial || r.exceeds_weyl) ++result.flagged;
    if (result.maxima.empty() || result.maxima.back().q != r.q || result.maxima.back().N != r.N) {
      result.maxima.push_back({r.q, r.N, r.ratio});
    } else {
      result.maxima.back().max_ratio = std::max(result.maxima.back().max_ratio, r.ratio);
    }
  }
  return result;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string out = "q,N,a,gamma,abs_sum,ratio,weyl_bound,exponent\n";
  for (const SweepRecord& r : records) {
    out += to_string(r.q) + ',' + to_string(r.N) + ',' + to_string(r.a) + ',' + format_double(r.gamma) +
           ',' + format_double(r.abs_sum) + ',' + format_double(r.ratio) + ',' +
           format_double(r.weyl_bound) + ',' + format_double(r.exponent) + '\n';
  }
  return out;
}

double max_ratio_slope(const std::vector<RatioMax>& maxima) {
  if (maxima.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(maxima.size());
  for (const RatioMax& m : maxima) {
    const double x = std::log(static_cast<double>(m.q));
    sx += x;
    sy += m.max_ratio;
    sxx += x * x;
    sxy += x * m.max_ratio;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

TraceReport trace_recursion(Int a, Int q, Int N, double gamma, double y_fraction, double epsilon) {
  if (N < 1 || N > 10000) throw Error(Errc::TooLarge, "trace needs 1 <= N <= 10^4");
  if (!(y_fraction > 0.0 && y_fraction <= 1.0)) throw Error(Errc::DomainError, "y_fraction must be in (0, 1]");
  const CubicPhase phase(a, q, gamma);

  TraceReport r{};
  r.a = phase.a();
  r.q = q;
  r.N = N;
  r.gamma = gamma;
  r.epsilon = epsilon;

  const SmoothWindow window = SmoothWindow::bump(N);
  const DPartition partition = d_partition(phase, window);
  r.q0 = partition.q0;
  r.b = partition.b;
  r.parts = partition.parts;
  r.notes.push_back("window: bump on [" + to_string(N) + ", " + to_string(2 * N) + "]");

  CompensatedSum<Complex> recombined;
  Int best_d = 1;
  double best_abs = -1.0;
  for (const auto& [d, value] : partition.parts) {
    recombined += value;
    if (std::abs(value) > best_abs) {
      best_abs = std::abs(value);
      best_d = d;
    }
  }
  r.partition_discrepancy = std::abs(recombined.value() - partition.total) /
                            std::max(1.0, std::abs(partition.total));
  r.d = best_d;
  r.notes.push_back("d chosen as the divisor of q0 with the largest |S'_d|");

  r.Y = std::clamp<Int>(static_cast<Int>(std::ceil(y_fraction * static_cast<double>(N))), 1, N);
  const double dq = static_cast<double>(r.d) / static_cast<double>(q);
  const double Nd = static_cast<double>(N);
  const double Yd = static_cast<double>(r.Y);
  r.weight_l = dq * dq * Yd / Nd;
  r.weight_s = dq * dq * Nd * Yd * Yd / static_cast<double>(q);

  if (r.d >= 2) {
    r.pair = short_approx(r.b, r.d, r.weight_l, r.weight_s);
  } else {
    r.pair = {1, 1, 1, r.b - 1};
    r.notes.push_back("d = 1: every residue is congruent, pair (1, 1)");
  }
  r.md = compute_md(r.pair, r.d, r.q0, r.Y, N, epsilon);

  // s1 runs over positive divisors of |s|; keep the one with the largest dual mass.
  const Int s_abs = r.pair.s < 0 ? -r.pair.s : r.pair.s;
  double best_mass = -1.0;
  for (Int s1 : divisors(s_abs)) {
    const DualSums dual = dual_sum(phase, r.d, r.pair, s1, r.Y, N);
    const double mass = std::abs(dual.s1) + std::abs(dual.s2);
    if (mass > best_mass) {
      best_mass = mass;
      r.s1 = s1;
      r.dual = dual;
    }
  }
  r.notes.push_back("dual sums use only the a-part of the outer phases");

  const Int s_inv = r.d >= 2 ? mod_inverse(r.pair.s, r.d) : 0;
  r.checks = {
      {"gcd(a, q) = 1", gcd(a, q) == 1},
      {"d | q0", r.q0 % r.d == 0},
      {"gcd(s, d) = 1", gcd(r.pair.s, r.d) == 1},
      {"b = ell * s^-1 (mod d)", floor_mod(r.b - r.pair.ell * s_inv, r.d) == 0},
      {"s b = ell + t d", r.pair.s * r.b == r.pair.ell + r.pair.t * r.d},
      {"ell >= 1", r.pair.ell >= 1},
  };
  for (const TraceCheck& c : r.checks) {
    if (!c.passed) throw Error(Errc::IdentityFailed, "trace identity failed: " + c.name);
  }
  return r;
}

nlohmann::ordered_json trace_to_json(const TraceReport& r) {
  using nlohmann::ordered_json;
  auto complex_json = [](Complex z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
  };
  ordered_json j;
  j["inputs"] = {{"a", to_string(r.a)}, {"q", to_string(r.q)}, {"N", to_string(r.N)}, {"gamma", r.gamma}};
  j["q0"] = to_string(r.q0);
  j["b"] = to_string(r.b);
  ordered_json parts = ordered_json::array();
  for (const auto& [d, value] : r.parts) {
    ordered_json p = complex_json(value);
    parts.push_back({{"d", to_string(d)}, {"S_prime", p}});
  }
  j["divisor_parts"] = parts;
  j["partition_discrepancy"] = r.partition_discrepancy;
  j["d"] = to_string(r.d);
  j["Y"] = to_string(r.Y);
  j["weights"] = {{"ell", r.weight_l}, {"s", r.weight_s}};
  j["pair"] = {{"ell", to_string(r.pair.ell)}, {"s", to_string(r.pair.s)}, {"t", to_string(r.pair.t)},
               {"d", to_string(r.pair.d)}};
  j["M_d"] = r.md.md;
  j["md_condition"] = {{"epsilon", r.epsilon}, {"value", r.md.condition}, {"holds", r.md.condition_holds}};
  j["s1"] = to_string(r.s1);
  j["dual"] = {{"S1", complex_json(r.dual.s1)},
               {"S2", complex_json(r.dual.s2)},
               {"terms", std::to_string(r.dual.terms)},
               {"skipped", std::to_string(r.dual.skipped)}};
  ordered_json checks = ordered_json::array();
  for (const TraceCheck& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  return j;
}

double completion_ratio(const Sequence& F, Int M1, Int M, Int N1, Int N, int gamma_grid) {
  if (M1 > M || N1 > N) throw Error(Errc::EmptyRange, "empty summation range");
  if (!(N1 <= M1 && M <= N)) throw Error(Errc::DomainError, "subrange must lie inside the full range");
  if (N - N1 > 100000) throw Error(Errc::TooLarge, "full range longer than 10^5");
  if (gamma_grid < 16) throw Error(Errc::DomainError, "gamma grid needs at least 16 points");

  std::vector<Complex> values;
  for (Int n = N1; n <= N; ++n) values.push_back(F(n));

  CompensatedSum<Complex> sub;
  for (Int n = M1; n <= M; ++n) sub += values[static_cast<std::size_t>(n - N1)];
  const double numerator = std::abs(sub.value());

  double denominator = 0.0;
  for (int k = 0; k < gamma_grid; ++k) {
    CompensatedSum<Complex> full;
    for (Int n = N1; n <= N; ++n) {
      full += values[static_cast<std::size_t>(n - N1)] * e_of(Mod1Rational(mul_mod(k, n, gamma_grid), gamma_grid));
    }
    denominator = std::max(denominator, std::abs(full.value()));
  }
  if (denominator == 0.0) return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return numerator / denominator;
}

}  // namespace cubesum

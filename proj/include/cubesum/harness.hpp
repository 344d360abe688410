#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubesum/expsum.hpp"
#include "cubesum/modarith.hpp"
#include "cubesum/reduction.hpp"

namespace cubesum {

/// Classical cubic Weyl bound N^(1+eps) (1/q + 1/N + q/N^3)^(1/4), implied
/// constant 1.
double weyl_bound(Int N, Int q, double eps = 0.0);

struct SweepRecord {
  Int q;
  Int N;
  Int a;
  double gamma;
  double abs_sum;
  double ratio;       // abs_sum / (qN)^(1/4)
  double weyl_bound;
  double exponent;    // log abs_sum / log q, 0 when abs_sum == 0 or q == 1
  bool exceeds_trivial;
  bool exceeds_weyl;  // abs_sum > weyl_constant * weyl_bound
};

struct SweepGrid {
  std::vector<Int> q_values;
  std::vector<double> thetas{0.4};
  int a_samples = 100;
  std::vector<double> gammas{0.0};
  std::uint64_t seed = 1;
  double epsilon = 0.0;
  double weyl_constant = 10.0;
  unsigned threads = 1;
};

struct RatioMax {
  Int q;
  Int N;
  double max_ratio;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // sorted by (q, N, a, gamma)
  std::vector<RatioMax> maxima;      // per (q, N), same order
  long flagged = 0;
};

/// N = floor(q^theta), guarded against pow() landing just below an integer.
Int n_from_theta(Int q, double theta);

/// {1, q-1} plus `count` distinct seeded coprime residues from [2, q-2]
/// (all of them when fewer exist). Sorted.
std::vector<Int> sample_coprime(Int q, int count, std::uint64_t seed);

/// `count` distinct seeded primes in [lo, hi], sorted.
std::vector<Int> seeded_primes(Int lo, Int hi, int count, std::uint64_t seed);

SweepResult sweep(const SweepGrid& grid);

/// Header q,N,a,gamma,abs_sum,ratio,weyl_bound,exponent; 12 significant digits.
std::string sweep_csv(const std::vector<SweepRecord>& records);

/// Least-squares slope of max_ratio against ln q.
double max_ratio_slope(const std::vector<RatioMax>& maxima);

struct TraceCheck {
  std::string name;
  bool passed;
};

struct TraceReport {
  Int a, q, N;
  double gamma;
  Int q0, b;
  std::map<Int, Complex> parts;
  double partition_discrepancy;
  Int d;
  Int Y;
  double weight_l, weight_s;
  ApproxPair pair;
  MdValue md;
  double epsilon;
  Int s1;
  DualSums dual;
  std::vector<TraceCheck> checks;
  std::vector<std::string> notes;
};

/// One pass of the differencing / lattice / duality pipeline on a bump window
/// of scale N. Y = ceil(y_fraction N) clamped to [1, N]. Exact identities are
/// re-verified and any failure throws IdentityFailed.
TraceReport trace_recursion(Int a, Int q, Int N, double gamma, double y_fraction = 0.5,
                            double epsilon = 0.01);

/// Stable key order; every integer is a decimal string.
nlohmann::ordered_json trace_to_json(const TraceReport& report);

using Sequence = std::function<Complex(Int)>;

/// |sum_{M1..M} F| / max_{gamma = k/G} |sum_{N1..N} F(n) e(gamma n)|.
double completion_ratio(const Sequence& F, Int M1, Int M, Int N1, Int N, int gamma_grid);

}  // namespace cubesum

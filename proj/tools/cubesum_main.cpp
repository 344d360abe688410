// cubesum: evaluate Gauss and cubic Weyl sums, run the invariant suites,
// parameter sweeps, and pipeline traces.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubesum/config.hpp"
#include "cubesum/expsum.hpp"
#include "cubesum/gauss.hpp"
#include "cubesum/harness.hpp"
#include "cubesum/verify.hpp"

namespace {

using cubesum::Complex;
using cubesum::Errc;
using cubesum::Error;
using cubesum::Int;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(Complex z) {
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

std::string fmt_small(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(Errc::ConfigError, "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Globals {
  std::string seed_text;
  unsigned threads = 1;
  std::string out;

  std::optional<std::uint64_t> seed() const {
    if (seed_text.empty()) return std::nullopt;
    const Int v = cubesum::parse_int(seed_text);
    if (v < 0 || v > Int(std::numeric_limits<std::uint64_t>::max())) {
      throw Error(Errc::DomainError, "--seed must be an unsigned 64-bit integer");
    }
    return static_cast<std::uint64_t>(v);
  }
};

int cmd_gauss(const Globals& g, const std::string& a_text, const std::string& ell_text,
              const std::string& q_text, const std::string& mode) {
  const Int a = cubesum::parse_int(a_text);
  const Int ell = cubesum::parse_int(ell_text);
  const Int q = cubesum::parse_int(q_text);
  if (q < 1) throw Error(Errc::DomainError, "q must be >= 1");
  const cubesum::GaussParams p(a, ell, q);
  Output out(g.out);
  std::ostream& os = out.stream();

  std::optional<Complex> closed_value;
  if (mode == "closed" || mode == "both") {
    try {
      const cubesum::GaussValue v = cubesum::gauss_closed(p);
      closed_value = v.to_complex();
      os << "closed: " << v.str() << '\n' << "closed_value: " << fmt(*closed_value) << '\n';
    } catch (const Error& e) {
      if (e.code() != Errc::NotCoprime) throw;
      os << "closed: unavailable (gcd(a, q) > 1), falling back to brute force\n";
      closed_value = cubesum::gauss_brute(p);
      os << "closed_value: " << fmt(*closed_value) << '\n';
    }
  }
  if (mode == "brute" || mode == "both") {
    const Complex brute = cubesum::gauss_brute(p);
    os << "brute_value: " << fmt(brute) << '\n';
    if (closed_value) os << "diff: " << fmt(std::abs(*closed_value - brute)) << '\n';
  }
  return kExitOk;
}

int cmd_weylsum(const Globals& g, const std::string& a_text, const std::string& q_text,
                const std::string& n_text, double gamma) {
  const Int a = cubesum::parse_int(a_text);
  const Int q = cubesum::parse_int(q_text);
  const Int N = cubesum::parse_int(n_text);
  if (q < 1 || N < 1) throw Error(Errc::DomainError, "q and N must be >= 1");
  const cubesum::SumValue s = cubesum::weyl_sum(cubesum::CubicPhase(a, q, gamma), N);
  const double abs_sum = std::abs(s.value);
  Output out(g.out);
  std::ostream& os = out.stream();
  os << "value: " << fmt(s.value) << '\n'
     << "abs: " << fmt(abs_sum) << '\n'
     << "ratio: " << fmt(abs_sum / std::pow(static_cast<double>(q) * static_cast<double>(N), 0.25)) << '\n'
     << "err_bound: " << fmt_small(s.err_bound) << '\n';
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::string& cap_text) {
  const Int cap = cubesum::parse_int(cap_text);
  const auto results = cubesum::run_verify(suite, cap, g.seed().value_or(1));
  Output out(g.out);
  std::ostream& os = out.stream();
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %10s %10s\n", "suite", "checks", "failures");
  os << line;
  bool ok = true;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-12s %10ld %10ld\n", r.name.c_str(), r.checks, r.failures);
    os << line;
    ok = ok && r.passed();
  }
  for (const auto& r : results) {
    if (!r.passed()) {
      os << "first counterexample (" << r.name << "): " << r.first_failure << '\n';
      break;
    }
  }
  os << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const Globals& g, const std::string& config_path) {
  cubesum::SweepGrid grid = cubesum::load_sweep_config(config_path, g.seed());
  grid.threads = g.threads;
  const cubesum::SweepResult result = cubesum::sweep(grid);
  Output out(g.out);
  out.stream() << cubesum::sweep_csv(result.records);
  for (const auto& m : result.maxima) {
    std::cerr << "max_ratio q=" << cubesum::to_string(m.q) << " N=" << cubesum::to_string(m.N) << " "
              << fmt(m.max_ratio) << '\n';
  }
  std::cerr << "records=" << result.records.size() << " flagged=" << result.flagged
            << " slope=" << fmt(cubesum::max_ratio_slope(result.maxima)) << '\n';
  return kExitOk;
}

int cmd_trace(const Globals& g, const std::string& a_text, const std::string& q_text,
              const std::string& n_text, double gamma, double y_fraction, double epsilon) {
  const Int a = cubesum::parse_int(a_text);
  const Int q = cubesum::parse_int(q_text);
  const Int N = cubesum::parse_int(n_text);
  if (q < 1 || N < 1) throw Error(Errc::DomainError, "q and N must be >= 1");
  const cubesum::TraceReport report = cubesum::trace_recursion(a, q, N, gamma, y_fraction, epsilon);
  Output out(g.out);
  out.stream() << cubesum::trace_to_json(report).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss sums, cubic Weyl sums, and empirical bound sweeps"};
  app.require_subcommand(1);
  app.allow_extras(false);

  Globals globals;
  app.add_option("--seed", globals.seed_text, "Seed (unsigned 64-bit decimal)");
  app.add_option("--threads", globals.threads, "Worker threads for sweep")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", globals.out, "Write output to this path instead of stdout");

  std::string a, ell, q, n, mode = "closed", suite, cap = "300", config;
  double gamma = 0.0, y_fraction = 0.5, epsilon = 0.01;

  auto* gauss = app.add_subcommand("gauss", "Evaluate G(a, l; q)");
  gauss->add_option("a", a)->required();
  gauss->add_option("ell", ell)->required();
  gauss->add_option("q", q)->required();
  gauss->add_option("--mode", mode)->check(CLI::IsMember({"closed", "brute", "both"}));

  auto* weylsum = app.add_subcommand("weylsum", "Evaluate sum_{n<=N} e(a n^3 / q + gamma n)");
  weylsum->add_option("a", a)->required();
  weylsum->add_option("q", q)->required();
  weylsum->add_option("N", n)->required();
  weylsum->add_option("gamma", gamma)->required();

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("suite", suite)->required()->check(
      CLI::IsMember({"gauss", "identities", "reciprocity", "poisson", "all"}));
  verify->add_option("--cap", cap, "Size cap for the suites");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep, CSV output");
  sweep->add_option("config", config)->required();

  auto* trace = app.add_subcommand("trace", "Trace one pass of the reduction pipeline, JSON output");
  trace->add_option("a", a)->required();
  trace->add_option("q", q)->required();
  trace->add_option("N", n)->required();
  trace->add_option("gamma", gamma)->required();
  trace->add_option("--y-fraction", y_fraction, "Y = ceil(fraction * N)");
  trace->add_option("--epsilon", epsilon, "Exponent slack in the M_d condition");

  // Subcommands accept the global flags in any position.
  for (auto* sub : {gauss, weylsum, verify, sweep, trace}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gauss) return cmd_gauss(globals, a, ell, q, mode);
    if (*weylsum) return cmd_weylsum(globals, a, q, n, gamma);
    if (*verify) return cmd_verify(globals, suite, cap);
    if (*sweep) return cmd_sweep(globals, config);
    if (*trace) return cmd_trace(globals, a, q, n, gamma, y_fraction, epsilon);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::IdentityFailed ? kExitVerifyFailed : kExitUsage;
  }
  return kExitUsage;
}

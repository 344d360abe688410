#include "cubesum/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace cubesum {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ',' || s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ',' && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void config_error(int line, const std::string& what) {
  throw Error(Errc::ConfigError, "line " + std::to_string(line) + ": " + what);
}

Int parse_config_int(std::string_view text, int line) {
  try {
    return parse_int(text);
  } catch (const Error&) {
    config_error(line, "expected a decimal integer, got '" + std::string(text) + "'");
  }
}

double parse_config_double(std::string_view text, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    config_error(line, "expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SweepGrid parse_sweep_config(std::string_view text, std::optional<std::uint64_t> seed_override) {
  SweepGrid grid;
  std::set<std::string> seen;
  std::vector<Int> explicit_q;
  bool have_range = false;
  Int range_lo = 0, range_hi = 0;
  int range_count = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) config_error(line_no, "duplicate key '" + key + "'");
    const auto items = split_list(value);
    if (items.empty()) config_error(line_no, "missing value for '" + key + "'");

    if (key == "q_list") {
      for (auto item : items) {
        const Int q = parse_config_int(item, line_no);
        if (q < 1 || q > kMaxModulus) config_error(line_no, "q out of range");
        explicit_q.push_back(q);
      }
    } else if (key == "q_primes_range") {
      if (items.size() < 2 || items.size() > 3) config_error(line_no, "q_primes_range expects lo hi [count]");
      range_lo = parse_config_int(items[0], line_no);
      range_hi = parse_config_int(items[1], line_no);
      if (range_lo < 2 || range_hi < range_lo || range_hi > kMaxModulus) {
        config_error(line_no, "q_primes_range bounds invalid");
      }
      if (items.size() == 3) {
        const Int count = parse_config_int(items[2], line_no);
        if (count < 1 || count > 1000000) config_error(line_no, "prime count out of range");
        range_count = static_cast<int>(count);
      }
      have_range = true;
    } else if (key == "theta") {
      grid.thetas.clear();
      for (auto item : items) {
        const double theta = parse_config_double(item, line_no);
        if (!(theta > 0.0 && theta <= 1.0)) config_error(line_no, "theta must lie in (0, 1]");
        grid.thetas.push_back(theta);
      }
    } else if (key == "a_samples") {
      if (items.size() != 1) config_error(line_no, "a_samples takes one value");
      const Int count = parse_config_int(items[0], line_no);
      if (count < 0 || count > 1000000) config_error(line_no, "a_samples out of range");
      grid.a_samples = static_cast<int>(count);
    } else if (key == "gamma_list") {
      grid.gammas.clear();
      for (auto item : items) grid.gammas.push_back(parse_config_double(item, line_no));
    } else if (key == "seed") {
      if (items.size() != 1) config_error(line_no, "seed takes one value");
      const Int seed = parse_config_int(items[0], line_no);
      if (seed < 0 || seed > Int(std::numeric_limits<std::uint64_t>::max())) {
        config_error(line_no, "seed must be an unsigned 64-bit integer");
      }
      grid.seed = static_cast<std::uint64_t>(seed);
    } else if (key == "epsilon") {
      if (items.size() != 1) config_error(line_no, "epsilon takes one value");
      grid.epsilon = parse_config_double(items[0], line_no);
    } else {
      config_error(line_no, "unknown key '" + key + "'");
    }
  }

  if (seed_override) grid.seed = *seed_override;
  grid.q_values = explicit_q;
  if (have_range) {
    const auto primes = seeded_primes(range_lo, range_hi, range_count, grid.seed);
    grid.q_values.insert(grid.q_values.end(), primes.begin(), primes.end());
  }
  if (grid.q_values.empty()) throw Error(Errc::ConfigError, "no moduli: set q_list or q_primes_range");
  return grid;
}

SweepGrid load_sweep_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str(), seed_override);
}

}  // namespace cubesum

#pragma once

// Flat key = value configuration files shared by every CLI command.
//
//   # comment
//   dims = 2, 4, 8, 16
//   trials = 10000
//   pair_kinds = disjoint, orthogonal, nonorthogonal, arbitrary
//   seed = 7
//
// Unknown keys and malformed values are errors that name the key and line.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "coherence/bounds.hpp"
#include "coherence/ensembles.hpp"
#include "coherence/errors.hpp"

namespace coherence {

class ConfigError : public CoherenceError {
 public:
  using CoherenceError::CoherenceError;
};

/// Every setting a command can read. Unset optionals fall back to the
/// command's defaults.
struct LabConfig {
  std::vector<std::size_t> dims{2, 4, 8, 16};
  std::size_t trials = 10000;
  std::vector<PairKind> pair_kinds{std::begin(kAllPairKinds), std::end(kAllPairKinds)};
  std::optional<std::uint64_t> seed;
  double tolerance = kTolerances.bound_slack;
  std::string out;
  unsigned workers = 1;
  bool reproducible = false;
  std::optional<BoundId> bound;
  std::optional<PairKind> pair_kind;
  int restarts = 16;
  int iterations = 2000;
  std::vector<double> grid;
};

inline constexpr std::uint64_t kDefaultSeed = 20170301;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

inline std::optional<bool> parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return std::nullopt;
}

}  // namespace detail

/// "a:b:step" (inclusive, rounded to 1e-12) or "x, y, z".
inline std::optional<std::vector<double>> parse_grid(std::string_view text) {
  text = detail::trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::string_view rest = text;
    while (true) {
      const auto colon = rest.find(':');
      auto v = detail::parse_number<double>(rest.substr(0, colon));
      if (!v) return std::nullopt;
      parts.push_back(*v);
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) return std::nullopt;
    const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(std::round((parts[0] + static_cast<double>(i) * parts[2]) * 1e12) / 1e12);
    return out;
  }
  for (auto item : detail::split_list(text)) {
    auto v = detail::parse_number<double>(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

/// Applies one key/value pair. `where` prefixes diagnostics ("file:line").
inline void apply_setting(LabConfig& cfg, std::string_view key, std::string_view value,
                          const std::string& where) {
  auto bad = [&](std::string_view why) {
    return ConfigError(where + ": bad value for key '" + std::string(key) + "': " + std::string(why));
  };
  value = detail::trim(value);
  if (key == "dims") {
    cfg.dims.clear();
    for (auto item : detail::split_list(value)) {
      auto d = detail::parse_number<std::size_t>(item);
      if (!d || *d < 2) throw bad("dimensions must be integers >= 2");
      cfg.dims.push_back(*d);
    }
  } else if (key == "trials") {
    auto n = detail::parse_number<std::size_t>(value);
    if (!n) throw bad("expected a non-negative integer");
    cfg.trials = *n;
  } else if (key == "pair_kinds") {
    cfg.pair_kinds.clear();
    for (auto item : detail::split_list(value)) {
      auto k = parse_pair_kind(item);
      if (!k) throw bad("unknown pair kind '" + std::string(item) + "'");
      cfg.pair_kinds.push_back(*k);
    }
  } else if (key == "pair_kind") {
    auto k = parse_pair_kind(value);
    if (!k) throw bad("unknown pair kind");
    cfg.pair_kind = *k;
  } else if (key == "seed") {
    auto s = detail::parse_number<std::uint64_t>(value);
    if (!s) throw bad("expected an unsigned 64-bit integer");
    cfg.seed = *s;
  } else if (key == "tolerance") {
    auto t = detail::parse_number<double>(value);
    if (!t || !(*t >= 0.0)) throw bad("expected a non-negative real");
    cfg.tolerance = *t;
  } else if (key == "out") {
    cfg.out = std::string(value);
  } else if (key == "workers") {
    auto w = detail::parse_number<unsigned>(value);
    if (!w) throw bad("expected a non-negative integer");
    cfg.workers = *w;
  } else if (key == "reproducible") {
    auto b = detail::parse_bool(value);
    if (!b) throw bad("expected true or false");
    cfg.reproducible = *b;
  } else if (key == "bound") {
    auto b = parse_bound_id(value);
    if (!b) throw bad("unknown bound id");
    cfg.bound = *b;
  } else if (key == "restarts") {
    auto r = detail::parse_number<int>(value);
    if (!r || *r <= 0) throw bad("expected a positive integer");
    cfg.restarts = *r;
  } else if (key == "iterations") {
    auto r = detail::parse_number<int>(value);
    if (!r || *r <= 0) throw bad("expected a positive integer");
    cfg.iterations = *r;
  } else if (key == "grid") {
    auto g = parse_grid(value);
    if (!g) throw bad("expected start:stop:step or a comma-separated list");
    cfg.grid = std::move(*g);
  } else {
    throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
  }
}

inline void load_config(LabConfig& cfg, std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(view) + "'");
    const auto key = detail::trim(view.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key before '='");
    apply_setting(cfg, key, view.substr(eq + 1), where);
  }
}

inline void load_config_file(LabConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  load_config(cfg, in, path);
}

}  // namespace coherence

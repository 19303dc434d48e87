#pragma once

// JSON encoding of reports. canonical_dump() fixes key order (sorted),
// indentation and float formatting (17 significant digits, "C" locale), so
// a parsed-and-redumped report is byte-identical to the original.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

#include "coherence/bounds.hpp"
#include "coherence/ensembles.hpp"
#include "coherence/search.hpp"
#include "coherence/superpose.hpp"

namespace coherence {

using Json = nlohmann::json;

/// 17 significant digits, locale independent. Non-finite values map to
/// "null"; negative zero is written as 0.
inline std::string format_float17(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

/// Shortest representation that parses back to the same double.
inline std::string format_shortest(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace detail {

inline void dump_canonical(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_canonical(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_canonical(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_float17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

inline std::string canonical_dump(const Json& j) {
  std::string out;
  detail::dump_canonical(j, out, 0);
  out += '\n';
  return out;
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const StateVector& v) {
  Json arr = Json::array();
  for (const auto& z : v.amps()) arr.push_back(to_json(z));
  return arr;
}

inline Json to_json(const BoundReport& r) {
  return Json{{"bound", std::string(to_string(r.bound_id))},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"satisfied", r.satisfied},
              {"tolerance", r.tolerance},
              {"inputs_digest", hex64(r.inputs_digest)}};
}

inline Json to_json(const SearchInputs& in) {
  return Json{{"alpha", to_json(in.coefficients.alpha())},
              {"beta", to_json(in.coefficients.beta())},
              {"phi", to_json(in.phi)},
              {"psi", to_json(in.psi)}};
}

inline Json to_json(const TrialRecord& t) {
  Json j{{"index", t.index}, {"seed", t.seed}};
  if (t.pair_class) j["pair_class"] = std::string(to_string(t.pair_class->tag));
  Json reports = Json::array();
  for (const auto& r : t.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  if (!t.ok()) j["error"] = t.error;
  return j;
}

}  // namespace coherence

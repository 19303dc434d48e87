#pragma once

// The work behind each CLI subcommand, kept out of main() so the test
// suites can drive it in-process.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <locale>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coherence/bounds.hpp"
#include "coherence/config.hpp"
#include "coherence/ensembles.hpp"
#include "coherence/entropy.hpp"
#include "coherence/report.hpp"
#include "coherence/search.hpp"
#include "coherence/superpose.hpp"

namespace coherence {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSeedEnvVar = "COHERENCE_LAB_SEED";

struct RunReport {
  std::string command;
  Json config = Json::object();
  Json results = Json::array();
  std::size_t violations = 0;
  std::string started_at;
  std::string finished_at;

  Json to_json() const {
    return Json{{"version", kToolVersion}, {"command", command},     {"config", config},
                {"results", results},      {"violations", violations}, {"started_at", started_at},
                {"finished_at", finished_at}};
  }
};

/// ISO-8601 UTC. In reproducible mode the instant is SOURCE_DATE_EPOCH (or
/// the Unix epoch) so repeated runs produce identical bytes.
inline std::string utc_timestamp(bool reproducible) {
  std::time_t t = 0;
  if (reproducible) {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
      if (auto v = detail::parse_number<long long>(env)) t = static_cast<std::time_t>(*v);
    }
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Flag/config seed, else $COHERENCE_LAB_SEED, else the built-in default.
inline std::uint64_t effective_seed(const LabConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv(kSeedEnvVar)) {
    auto v = detail::parse_number<std::uint64_t>(env);
    if (!v) throw ConfigError(std::string(kSeedEnvVar) + ": expected an unsigned 64-bit integer");
    return *v;
  }
  return kDefaultSeed;
}

inline std::size_t count_violations(const std::vector<BoundReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.satisfied ? 0 : 1;
  return n;
}

// ---------------------------------------------------------------- demo

struct DemoCase {
  std::string name;
  std::string description;
  SuperpositionCoefficients coefficients;
  StateVector phi;
  StateVector psi;
};

/// (|0> + |1>)/sqrt2 from incoherent terms, and (|+> + |->)/sqrt2 = |0>
/// from maximally coherent terms.
inline std::vector<DemoCase> demo_cases() {
  const auto half = SuperpositionCoefficients::from_alpha_sq(0.5);
  const ComplexVector plus{1.0, 1.0}, minus{1.0, -1.0};
  return {
      {"basis_pair", "|0> and |1> superposed with alpha = beta = 1/sqrt(2)", half,
       StateVector::basis(2, 0), StateVector::basis(2, 1)},
      {"plus_minus_pair", "|+> and |-> superposed with alpha = beta = 1/sqrt(2)", half, normalize(plus),
       normalize(minus)},
  };
}

inline RunReport run_demo(double tolerance, bool reproducible) {
  RunReport rep;
  rep.command = "demo";
  rep.started_at = utc_timestamp(reproducible);
  rep.config = Json{{"tolerance", tolerance}};
  for (const auto& dc : demo_cases()) {
    const auto omega = superpose(dc.coefficients, dc.phi, dc.psi);
    const auto reports = evaluate_all(dc.coefficients, dc.phi, dc.psi, tolerance);
    rep.violations += count_violations(reports);
    Json entry{{"name", dc.name},
               {"description", dc.description},
               {"coherence_phi", pure_state_coherence(dc.phi)},
               {"coherence_psi", pure_state_coherence(dc.psi)},
               {"coherence_superposition", pure_state_coherence(*omega.normalized)},
               {"superposition_norm", omega.norm},
               {"pair_class", std::string(to_string(classify_pair(dc.phi, dc.psi).tag))}};
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(to_json(r));
    entry["reports"] = std::move(rs);
    rep.results.push_back(std::move(entry));
  }
  rep.finished_at = utc_timestamp(reproducible);
  return rep;
}

inline std::string fixed6(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, ptr);
}

inline std::string render_demo_text(const RunReport& rep) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  for (const auto& e : rep.results) {
    os << e["name"].get<std::string>() << ": " << e["description"].get<std::string>() << '\n'
       << "  C_re(phi)   = " << fixed6(e["coherence_phi"].get<double>()) << '\n'
       << "  C_re(psi)   = " << fixed6(e["coherence_psi"].get<double>()) << '\n'
       << "  C_re(omega) = " << fixed6(e["coherence_superposition"].get<double>()) << '\n';
    for (const auto& r : e["reports"]) {
      os << "  " << r["bound"].get<std::string>() << ": lhs=" << format_shortest(r["lhs"].get<double>())
         << " rhs=" << format_shortest(r["rhs"].get<double>())
         << " slack=" << format_shortest(r["slack"].get<double>())
         << (r["satisfied"].get<bool>() ? " ok" : " VIOLATED") << '\n';
    }
  }
  os << "violations: " << rep.violations << '\n';
  return os.str();
}

// ---------------------------------------------------------------- verify

/// Seed of the (kind, dim) ensemble under a master seed.
inline std::uint64_t ensemble_seed(std::uint64_t master, PairKind kind, std::size_t dim) {
  return derive_seed(master, (static_cast<std::uint64_t>(kind) << 32) | dim);
}

struct BoundTally {
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // largest residual for equalities, smallest slack otherwise
  std::size_t worst_trial = 0;
};

inline Json summarize_ensemble(const EnsembleConfig& ec, const std::vector<TrialRecord>& records,
                               std::size_t& violations) {
  std::map<BoundId, BoundTally> tallies;
  std::map<std::string, std::size_t> classes;
  std::size_t errors = 0;
  Json violating = Json::array();
  Json first_error;
  for (const auto& t : records) {
    if (!t.ok()) {
      if (errors++ == 0) first_error = Json{{"index", t.index}, {"error", t.error}};
      continue;
    }
    ++classes[std::string(to_string(t.pair_class->tag))];
    bool bad = false;
    for (const auto& r : t.reports) {
      auto& tally = tallies[r.bound_id];
      const bool worse = kind_of(r.bound_id) == BoundKind::Equality ? r.slack > tally.worst_slack
                                                                    : r.slack < tally.worst_slack;
      if (tally.evaluated == 0 || worse) {
        tally.worst_slack = r.slack;
        tally.worst_trial = t.index;
      }
      ++tally.evaluated;
      if (!r.satisfied) {
        ++tally.violations;
        ++violations;
        bad = true;
      }
    }
    if (bad && violating.size() < 10) violating.push_back(to_json(t));
  }
  Json bounds = Json::object();
  for (const auto& [id, tally] : tallies) {
    bounds[std::string(to_string(id))] = Json{{"evaluated", tally.evaluated},
                                              {"violations", tally.violations},
                                              {"worst_slack", tally.worst_slack},
                                              {"worst_trial", tally.worst_trial}};
  }
  Json out{{"pair_kind", std::string(to_string(ec.pair_kind))},
           {"dim", ec.dim},
           {"trials", ec.trials},
           {"seed", ec.seed},
           {"errors", errors},
           {"pair_classes", classes},
           {"bounds", bounds},
           {"violating_trials", violating}};
  if (errors) out["first_error"] = first_error;
  return out;
}

/// Runs one ensemble per (pair kind, dimension). Worker count and output
/// path are deliberately absent from the echoed config.
inline RunReport run_verify(const LabConfig& cfg) {
  RunReport rep;
  rep.command = "verify";
  rep.started_at = utc_timestamp(cfg.reproducible);
  const auto master = effective_seed(cfg);
  Json kinds = Json::array();
  for (auto k : cfg.pair_kinds) kinds.push_back(std::string(to_string(k)));
  rep.config = Json{{"dims", cfg.dims},   {"trials", cfg.trials},       {"pair_kinds", kinds},
                    {"seed", master},     {"tolerance", cfg.tolerance}};
  if (cfg.trials > 0) {
    for (auto kind : cfg.pair_kinds) {
      for (auto d : cfg.dims) {
        EnsembleConfig ec;
        ec.dim = d;
        ec.trials = cfg.trials;
        ec.pair_kind = kind;
        ec.seed = ensemble_seed(master, kind, d);
        ec.tolerance = cfg.tolerance;
        const auto records = run_ensemble(ec, cfg.workers);
        rep.results.push_back(summarize_ensemble(ec, records, rep.violations));
      }
    }
  }
  rep.finished_at = utc_timestamp(cfg.reproducible);
  return rep;
}

inline std::string render_verify_csv(const RunReport& rep) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "pair_kind,dim,bound,evaluated,violations,worst_slack\n";
  for (const auto& e : rep.results) {
    for (auto it = e["bounds"].begin(); it != e["bounds"].end(); ++it) {
      os << e["pair_kind"].get<std::string>() << ',' << e["dim"].get<std::size_t>() << ',' << it.key() << ','
         << it.value()["evaluated"].get<std::size_t>() << ',' << it.value()["violations"].get<std::size_t>()
         << ',' << format_shortest(it.value()["worst_slack"].get<double>()) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
  double alpha_sq;
  BoundReport report;
};

/// Pair kind used for a bound's sweep.
inline PairKind sweep_pair_kind(BoundId id) {
  return id == BoundId::T3Upper ? PairKind::NonOrthogonal : default_pair_kind(id);
}

/// Evaluates `bound` at real coefficients alpha = sqrt(a), beta = sqrt(1-a)
/// for every a in the grid, on one state pair drawn from `seed`.
inline std::vector<SweepRow> run_sweep(BoundId bound, std::size_t dim, const std::vector<double>& grid,
                                       std::uint64_t seed, double tolerance) {
  if (dim < 2) throw ConfigError("sweep dimension must be >= 2");
  for (double a : grid)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("grid values must lie in (0, 1), got " + format_shortest(a));
  EnsembleConfig ec;
  ec.dim = dim;
  ec.pair_kind = sweep_pair_kind(bound);
  Rng rng(seed);
  const auto [phi, psi] = random_pair(ec, rng);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double a : grid)
    rows.push_back({a, evaluate_bound(bound, SuperpositionCoefficients::from_alpha_sq(a), phi, psi, tolerance)});
  return rows;
}

inline std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "alpha_sq,lhs,rhs,slack\n";
  for (const auto& r : rows) {
    out += format_shortest(r.alpha_sq) + ',' + format_shortest(r.report.lhs) + ',' +
           format_shortest(r.report.rhs) + ',' + format_shortest(r.report.slack) + '\n';
  }
  return out;
}

inline RunReport sweep_report(BoundId bound, std::size_t dim, std::uint64_t seed, double tolerance,
                              const std::vector<SweepRow>& rows, bool reproducible) {
  RunReport rep;
  rep.command = "sweep";
  rep.started_at = utc_timestamp(reproducible);
  rep.config = Json{{"bound", std::string(to_string(bound))}, {"dim", dim}, {"seed", seed}, {"tolerance", tolerance}};
  for (const auto& r : rows) {
    Json j = to_json(r.report);
    j["alpha_sq"] = r.alpha_sq;
    rep.results.push_back(std::move(j));
    rep.violations += r.report.satisfied ? 0 : 1;
  }
  rep.finished_at = utc_timestamp(reproducible);
  return rep;
}

// ---------------------------------------------------------------- saturate

inline RunReport saturate_report(const SearchSpec& spec, const SearchResult& res, bool reproducible,
                                 const std::string& started_at) {
  RunReport rep;
  rep.command = "saturate";
  rep.started_at = started_at;
  rep.config = Json{{"bound", std::string(to_string(spec.bound_id))},
                    {"dim", spec.dim},
                    {"pair_kind", std::string(to_string(spec.pair_kind))},
                    {"restarts", spec.restarts},
                    {"iterations", spec.iterations},
                    {"seed", spec.seed},
                    {"tolerance", spec.tolerance}};
  Json trace = Json::array();
  for (std::size_t r = 0; r < res.trace.size(); ++r) {
    trace.push_back(Json{{"restart", r},
                         {"seed", res.trace[r].seed},
                         {"best_slack", res.trace[r].best_slack},
                         {"iterations", res.trace[r].iterations}});
  }
  Json result{{"best_slack", res.best_slack}, {"best_restart", res.best_restart}, {"trace", trace}};
  if (res.best_inputs) result["best_inputs"] = to_json(*res.best_inputs);
  if (res.best_report) result["best_report"] = to_json(*res.best_report);
  rep.results.push_back(std::move(result));
  rep.violations = res.violation() ? 1 : 0;
  rep.finished_at = utc_timestamp(reproducible);
  return rep;
}

inline std::string sig12(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

inline std::string render_complex12(Complex z) {
  return sig12(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + sig12(std::abs(z.imag())) + "i";
}

inline std::string render_saturate_text(const SearchSpec& spec, const SearchResult& res) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "bound: " << to_string(spec.bound_id) << "  dim: " << spec.dim << "  pair kind: " << to_string(spec.pair_kind)
     << '\n';
  os << "best slack: " << format_shortest(res.best_slack) << " (restart " << res.best_restart << ")\n";
  if (res.best_report) {
    os << "lhs: " << format_shortest(res.best_report->lhs) << "  rhs: " << format_shortest(res.best_report->rhs)
       << (res.best_report->satisfied ? "  ok" : "  VIOLATED") << '\n';
  }
  if (res.best_inputs) {
    os << "alpha: " << render_complex12(res.best_inputs->coefficients.alpha()) << '\n';
    os << "beta:  " << render_complex12(res.best_inputs->coefficients.beta()) << '\n';
    for (std::size_t i = 0; i < res.best_inputs->phi.dim(); ++i) {
      os << "phi[" << i << "] = " << render_complex12(res.best_inputs->phi[i]) << "   psi[" << i
         << "] = " << render_complex12(res.best_inputs->psi[i]) << '\n';
    }
  }
  os << "restart trace:\n";
  for (std::size_t r = 0; r < res.trace.size(); ++r) {
    os << "  " << r << ": best slack " << format_shortest(res.trace[r].best_slack) << " after "
       << res.trace[r].iterations << " iterations\n";
  }
  return os.str();
}

}  // namespace coherence

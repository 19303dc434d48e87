// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "coherence/coherence.hpp"
#include "coherence/commands.hpp"
#include "test_support.hpp"

namespace {

using namespace coherence;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Verdict()> body;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Every dimension 2..16 receives an equal share of at least `total` trials.
std::vector<TrialRecord> spread_ensemble(PairKind kind, std::size_t total, std::uint64_t seed) {
  std::vector<TrialRecord> out;
  const std::size_t per_dim = (total + 14) / 15;
  for (std::size_t d = 2; d <= 16; ++d) {
    EnsembleConfig ec;
    ec.dim = d;
    ec.trials = per_dim;
    ec.pair_kind = kind;
    ec.seed = derive_seed(seed, d);
    auto recs = run_ensemble(ec, 0);
    out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return out;
}

struct SlackScan {
  std::size_t evaluated = 0;
  std::size_t errors = 0;
  double worst = std::numeric_limits<double>::infinity();
};

SlackScan scan(const std::vector<TrialRecord>& recs, BoundId id) {
  SlackScan s;
  for (const auto& t : recs) {
    if (!t.ok()) {
      ++s.errors;
      continue;
    }
    for (const auto& r : t.reports) {
      if (r.bound_id != id) continue;
      ++s.evaluated;
      s.worst = std::min(s.worst, r.slack);
    }
  }
  return s;
}

Verdict demo_case(std::size_t index, double expect_omega, double expect_terms) {
  const auto rep = run_demo(kTolerances.bound_slack, true);
  const auto& e = rep.results.at(index);
  const double omega = e["coherence_superposition"].get<double>();
  const double phi = e["coherence_phi"].get<double>();
  const double psi = e["coherence_psi"].get<double>();
  const bool ok = std::abs(omega - expect_omega) <= 1e-12 && std::abs(phi - expect_terms) <= 1e-12 &&
                  std::abs(psi - expect_terms) <= 1e-12;
  return {ok, "C_re(omega)=" + format_shortest(omega) + " C_re(phi)=" + format_shortest(phi) +
                  " C_re(psi)=" + format_shortest(psi)};
}

Verdict theorem1_sweep() {
  double worst = 0.0;
  std::size_t checked = 0, errors = 0;
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    EnsembleConfig ec;
    ec.dim = d;
    ec.trials = 10000;
    ec.pair_kind = PairKind::DisjointSupport;
    ec.seed = derive_seed(3, d);
    for (const auto& t : run_ensemble(ec, 0)) {
      if (!t.ok()) {
        ++errors;
        continue;
      }
      for (const auto& r : t.reports) {
        if (r.bound_id != BoundId::T1Equality) continue;
        ++checked;
        worst = std::max(worst, r.slack);
      }
    }
  }
  return {errors == 0 && checked == 40000 && worst <= 1e-9,
          std::to_string(checked) + " trials, max residual " + sci(worst) + ", errors " + std::to_string(errors)};
}

Verdict gain_bound() {
  double max_gain_seen = -std::numeric_limits<double>::infinity();
  std::size_t checked = 0, errors = 0;
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    EnsembleConfig ec;
    ec.dim = d;
    ec.trials = 10000;
    ec.pair_kind = PairKind::DisjointSupport;
    ec.seed = derive_seed(3, d);
    for (const auto& t : run_ensemble(ec, 0)) {
      if (!t.ok()) {
        ++errors;
        continue;
      }
      for (const auto& r : t.reports) {
        if (r.bound_id != BoundId::GainLe1) continue;
        ++checked;
        max_gain_seen = std::max(max_gain_seen, r.lhs);
      }
    }
  }
  SearchSpec spec;
  spec.bound_id = BoundId::GainLe1;
  spec.dim = 2;
  spec.pair_kind = PairKind::DisjointSupport;
  spec.restarts = 16;
  spec.seed = kDefaultSeed;
  const auto res = minimize_slack(spec, 0);
  const double saturated = res.best_report ? res.best_report->lhs : -1.0;
  return {errors == 0 && checked == 40000 && max_gain_seen <= 1.0 + 1e-9 && saturated >= 1.0 - 1e-6,
          "max ensemble gain " + format_shortest(max_gain_seen) + ", searched gain " + format_shortest(saturated)};
}

Verdict theorems2and3() {
  const auto t2 = scan(spread_ensemble(PairKind::OrthogonalSameSpace, 10000, 5), BoundId::T2Upper);
  const auto t3 = scan(spread_ensemble(PairKind::NonOrthogonal, 10000, 7), BoundId::T3Upper);
  const bool ok = t2.errors == 0 && t3.errors == 0 && t2.evaluated >= 10000 && t3.evaluated >= 10000 &&
                  t2.worst >= -1e-9 && t3.worst >= -1e-9;
  return {ok, "T2 " + std::to_string(t2.evaluated) + " pairs min slack " + sci(t2.worst) + "; T3 " +
                  std::to_string(t3.evaluated) + " pairs min slack " + sci(t3.worst)};
}

Verdict theorem4() {
  const auto recs = spread_ensemble(PairKind::Arbitrary, 10000, 11);
  const auto a = scan(recs, BoundId::T4LowerA);
  const auto b = scan(recs, BoundId::T4LowerB);
  const auto c = SuperpositionCoefficients::from_alpha_sq(0.5);
  const auto point = theorem4_lower(c, StateVector::basis(2, 0), StateVector::basis(2, 1));
  const double oracle = -1.5 * (std::log2(3.0) - 2.0 / 3.0);
  const bool ok = a.errors == 0 && a.evaluated >= 10000 && b.evaluated >= 10000 && a.worst >= -1e-9 &&
                  b.worst >= -1e-9 && std::abs(point.branch_a.rhs - oracle) <= 1e-6 &&
                  std::abs(point.branch_a.rhs - (-1.377443)) <= 1e-6;
  return {ok, std::to_string(a.evaluated) + " pairs, min slack A " + sci(a.worst) + " B " + sci(b.worst) +
                  ", rhs_A at basis pair " + format_shortest(point.branch_a.rhs)};
}

Verdict identities() {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_mix = 0.0, worst_t = 0.0, worst_norm = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = 2 + static_cast<std::size_t>(k) % 15;
    const auto c = SuperpositionCoefficients::from_angles(0.5 * std::numbers::pi * u(gen), 2.0 * std::numbers::pi * u(gen));
    const auto phi = testing::random_state(d, gen);
    const auto psi = testing::random_state(d, gen);
    worst_mix = std::max(worst_mix, mixing_identity_residual(c, phi, psi));
    worst_t = std::max(worst_t, mixing_identity_residual_t_states(c, phi, psi));
    worst_norm = std::max(worst_norm, norm_identity_residual(c, phi, psi));
  }
  return {worst_mix <= 1e-12 && worst_t <= 1e-12 && worst_norm <= 1e-12,
          "max residuals: mixing " + sci(worst_mix) + ", mixing via T-states " + sci(worst_t) + ", norm " +
              sci(worst_norm)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(17);
  double worst_path = 0.0, worst_eig = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto psi = testing::random_state(1 + static_cast<std::size_t>(k) % 16, gen);
    worst_path = std::max(worst_path,
                          std::abs(pure_state_coherence(psi) - relative_entropy_coherence(DensityMatrix::pure(psi))));
  }
  for (int k = 0; k < 1000; ++k) {
    const auto h = testing::random_hermitian(2, gen);
    const double a = h(0, 0).real(), b = h(1, 1).real();
    const double r = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(h(0, 1)));
    const auto eig = hermitian_eigenvalues(h);
    worst_eig = std::max({worst_eig, std::abs(eig[0] - (0.5 * (a + b) + r)), std::abs(eig[1] - (0.5 * (a + b) - r))});
  }
  return {worst_path <= 1e-8 && worst_eig <= 1e-12,
          "pure vs eigen path " + sci(worst_path) + ", 2x2 closed form " + sci(worst_eig)};
}

std::string run_tool(const std::string& args) {
  const std::string cmd = "env -u COHERENCE_LAB_SEED '" + std::string(COHERENCE_LAB_BIN) + "' " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "exit " + std::to_string(status);
  return out;
}

Verdict determinism() {
  const auto cfg = std::filesystem::temp_directory_path() / "coherence_acceptance.cfg";
  std::ofstream(cfg) << "dims = 2, 4, 8, 16\ntrials = 10000\nseed = 20170301\nreproducible = true\n";
  const std::string base = "verify --config '" + cfg.string() + "'";
  const auto first = run_tool(base + " --workers 1");
  const auto second = run_tool(base + " --workers 1");
  const auto parallel = run_tool(base + " --workers 8");
  std::filesystem::remove(cfg);
  const bool ok = first.size() > 100 && first == second && first == parallel;
  return {ok, std::to_string(first.size()) + " bytes; repeat " + (first == second ? "identical" : "DIFFERS") +
                  "; 8 workers " + (first == parallel ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "demo: incoherent basis terms superpose to C_re = 1", 1.0, [] { return demo_case(0, 1.0, 0.0); }},
      {2, "demo: maximally coherent |+>,|-> superpose to C_re = 0", 1.0, [] { return demo_case(1, 0.0, 1.0); }},
      {3, "disjoint-support equality residual <= 1e-9, 1e4 trials x d in {2,4,8,16}", 60.0, theorem1_sweep},
      {4, "coherence gain <= 1 + 1e-9 and search reaches >= 1 - 1e-6", 60.0, gain_bound},
      {5, "orthogonal and non-orthogonal upper bounds, slack >= -1e-9", 120.0, theorems2and3},
      {6, "two-branch lower bound, slack >= -1e-9, rhs_A = -1.377443", 120.0, theorem4},
      {7, "mixing and norm identities <= 1e-12 on 1e3 triples", 60.0, identities},
      {8, "pure path vs eigensolver <= 1e-8, 2x2 closed form <= 1e-12", 60.0, oracle_equivalence},
      {9, "verify JSON byte-identical across runs and worker counts", 120.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.0f s", secs, c.time_limit_s);
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " | " << v.detail << " | "
              << timing << (in_time ? "" : " TIME LIMIT EXCEEDED") << '\n';
  }
  std::cout << (failures ? "ACCEPTANCE FAILED: " + std::to_string(failures) + " criteria" : "ACCEPTANCE PASSED")
            << '\n';
  return failures ? 1 : 0;
}

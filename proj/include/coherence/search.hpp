#pragma once

// Saturation search: Nelder-Mead over an unconstrained encoding of
// (alpha, beta, phi, psi), minimizing the slack of one bound.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "coherence/bounds.hpp"
#include "coherence/ensembles.hpp"
#include "coherence/errors.hpp"
#include "coherence/nelder_mead.hpp"
#include "coherence/random.hpp"
#include "coherence/superpose.hpp"

namespace coherence {

/// Pair kind a bound is searched over when the caller does not choose.
inline PairKind default_pair_kind(BoundId id) {
  switch (id) {
    case BoundId::T1Equality:
    case BoundId::GainLe1: return PairKind::DisjointSupport;
    case BoundId::T2Upper: return PairKind::OrthogonalSameSpace;
    default: return PairKind::Arbitrary;
  }
}

inline bool compatible(BoundId id, PairKind kind) {
  switch (id) {
    case BoundId::T1Equality:
    case BoundId::GainLe1: return kind == PairKind::DisjointSupport;
    case BoundId::T2Upper: return kind == PairKind::DisjointSupport || kind == PairKind::OrthogonalSameSpace;
    default: return true;
  }
}

struct SearchSpec {
  BoundId bound_id = BoundId::GainLe1;
  std::size_t dim = 2;
  PairKind pair_kind = PairKind::DisjointSupport;
  int restarts = 16;
  int iterations = 2000;
  std::uint64_t seed = 0;
  double tolerance = kTolerances.bound_slack;
};

struct SearchInputs {
  SuperpositionCoefficients coefficients;
  StateVector phi;
  StateVector psi;
};

inline std::size_t parameter_count(std::size_t d) { return 2 + 4 * d; }

/// Maps x = (theta, phi_angle, Re/Im of d raw phi amplitudes, Re/Im of d raw
/// psi amplitudes) onto a feasible triple for `kind`:
///   coefficients  alpha = cos theta, beta = sin theta e^{i phi_angle};
///   disjoint      phi restricted to [0, first), psi to [first, first + second);
///   orthogonal    psi Gram-Schmidt'ed against phi;
/// then both states normalized. Throws ZeroVector when a block vanishes.
inline SearchInputs parameterize(std::span<const double> x, std::size_t d, PairKind kind,
                                 std::optional<Split> split = std::nullopt) {
  if (x.size() != parameter_count(d))
    throw DimensionMismatch(x.size(), parameter_count(d));
  ComplexVector raw_phi(d), raw_psi(d);
  for (std::size_t i = 0; i < d; ++i) {
    raw_phi[i] = {x[2 + 2 * i], x[3 + 2 * i]};
    raw_psi[i] = {x[2 + 2 * d + 2 * i], x[3 + 2 * d + 2 * i]};
  }
  if (kind == PairKind::DisjointSupport) {
    const Split sp = split.value_or(default_split(d));
    if (sp.first == 0 || sp.second == 0 || sp.first + sp.second > d) throw BadSplit("invalid split");
    for (std::size_t i = 0; i < d; ++i) {
      if (i >= sp.first) raw_phi[i] = 0.0;
      if (i < sp.first || i >= sp.first + sp.second) raw_psi[i] = 0.0;
    }
  }
  auto phi = normalize(raw_phi);
  if (kind == PairKind::OrthogonalSameSpace) detail::project_out(raw_psi, phi);
  auto psi = normalize(raw_psi);
  return {SuperpositionCoefficients::from_angles(x[0], x[1]), std::move(phi), std::move(psi)};
}

/// Inverse of parameterize for triples with real alpha: returns x with
/// parameterize(x) reproducing the triple. Throws DomainError if alpha has
/// an imaginary part.
inline std::vector<double> encode(const SearchInputs& in) {
  const Complex alpha = in.coefficients.alpha();
  const Complex beta = in.coefficients.beta();
  if (std::abs(alpha.imag()) > 1e-12) throw DomainError("encode requires a real alpha");
  const std::size_t d = in.phi.dim();
  std::vector<double> x(parameter_count(d));
  x[0] = std::atan2(std::abs(beta), alpha.real());
  x[1] = std::abs(beta) > 0.0 ? std::arg(beta) : 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    x[2 + 2 * i] = in.phi[i].real();
    x[3 + 2 * i] = in.phi[i].imag();
    x[2 + 2 * d + 2 * i] = in.psi[i].real();
    x[3 + 2 * d + 2 * i] = in.psi[i].imag();
  }
  return x;
}

/// Slack of `spec.bound_id` at the decoded point, +inf where the point is
/// degenerate (vanishing block or superposition).
inline double slack_at(const SearchSpec& spec, std::span<const double> x) {
  try {
    const auto in = parameterize(x, spec.dim, spec.pair_kind);
    return evaluate_bound(spec.bound_id, in.coefficients, in.phi, in.psi, spec.tolerance).slack;
  } catch (const ZeroVector&) {
    return std::numeric_limits<double>::infinity();
  } catch (const WrongPairClass&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct RestartTrace {
  std::uint64_t seed = 0;
  double best_slack = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> history;  // best slack after each simplex iteration
  std::vector<double> best_x;
};

struct SearchResult {
  double best_slack = std::numeric_limits<double>::infinity();
  std::size_t best_restart = 0;
  std::vector<double> best_x;
  std::optional<SearchInputs> best_inputs;
  std::optional<BoundReport> best_report;  // re-evaluated at best_inputs
  std::vector<RestartTrace> trace;

  /// A proven bound was reported violated beyond tolerance.
  bool violation() const { return best_report && !best_report->satisfied; }
};

inline std::vector<double> random_start(std::size_t d, Rng& rng) {
  std::vector<double> x(parameter_count(d));
  x[0] = rng.uniform(0.0, 0.5 * std::numbers::pi);
  x[1] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 2; i < x.size(); ++i) x[i] = rng.normal();
  return x;
}

inline RestartTrace run_restart(const SearchSpec& spec, std::size_t restart) {
  RestartTrace t;
  t.seed = derive_seed(spec.seed, restart);
  Rng rng(t.seed);
  auto x0 = random_start(spec.dim, rng);
  NelderMeadOptions opt;
  opt.max_iterations = spec.iterations;
  auto nm = nelder_mead([&spec](const std::vector<double>& x) { return slack_at(spec, x); }, std::move(x0), opt);
  t.best_slack = nm.value;
  t.iterations = nm.iterations;
  t.history = std::move(nm.history);
  t.best_x = std::move(nm.x);
  return t;
}

/// Best slack over `spec.restarts` independently seeded Nelder-Mead runs.
/// Ties go to the lowest restart index; the outcome does not depend on the
/// worker count.
inline SearchResult minimize_slack(const SearchSpec& spec, unsigned workers = 1) {
  if (spec.dim < 2) throw InvalidState("search dimension must be >= 2");
  if (spec.restarts <= 0 || spec.iterations <= 0) throw DomainError("restarts and iterations must be positive");
  if (!compatible(spec.bound_id, spec.pair_kind))
    throw WrongPairClass(std::string(to_string(spec.bound_id)) + " cannot be searched over " +
                         std::string(to_string(spec.pair_kind)) + " pairs");

  const auto n = static_cast<std::size_t>(spec.restarts);
  SearchResult result;
  result.trace.resize(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next++; r < n; r = next++) result.trace[r] = run_restart(spec, r);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t r = 0; r < n; ++r) {
    if (result.trace[r].best_slack < result.best_slack || (r == 0 && std::isinf(result.trace[r].best_slack))) {
      result.best_slack = result.trace[r].best_slack;
      result.best_restart = r;
    }
  }
  result.best_x = result.trace[result.best_restart].best_x;
  try {
    auto in = parameterize(result.best_x, spec.dim, spec.pair_kind);
    result.best_report = evaluate_bound(spec.bound_id, in.coefficients, in.phi, in.psi, spec.tolerance);
    result.best_inputs = std::move(in);
  } catch (const CoherenceError&) {
    // every restart ended on a degenerate point; best_slack stays +inf
  }
  return result;
}

}  // namespace coherence

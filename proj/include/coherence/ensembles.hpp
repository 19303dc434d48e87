#pragma once

// Seeded random states, state pairs and coefficients, and the Monte-Carlo
// driver that evaluates every applicable bound on each trial.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "coherence/bounds.hpp"
#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/random.hpp"
#include "coherence/superpose.hpp"
#include "coherence/tolerances.hpp"

namespace coherence {

enum class PairKind { DisjointSupport, OrthogonalSameSpace, NonOrthogonal, Arbitrary };

inline constexpr PairKind kAllPairKinds[] = {PairKind::DisjointSupport, PairKind::OrthogonalSameSpace,
                                             PairKind::NonOrthogonal, PairKind::Arbitrary};

inline std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::DisjointSupport: return "disjoint";
    case PairKind::OrthogonalSameSpace: return "orthogonal";
    case PairKind::NonOrthogonal: return "nonorthogonal";
    case PairKind::Arbitrary: return "arbitrary";
  }
  return "?";
}

inline std::optional<PairKind> parse_pair_kind(std::string_view text) {
  for (PairKind k : kAllPairKinds)
    if (to_string(k) == text) return k;
  return std::nullopt;
}

struct Split {
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Half/half split of d indices, the larger block second.
inline Split default_split(std::size_t d) { return {d / 2, d - d / 2}; }

struct EnsembleConfig {
  std::size_t dim = 2;
  std::size_t trials = 0;
  PairKind pair_kind = PairKind::Arbitrary;
  std::uint64_t seed = 0;
  std::optional<Split> split;     // DisjointSupport only; defaults to default_split(dim)
  bool permute_indices = false;   // DisjointSupport only
  double tolerance = kTolerances.bound_slack;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<PairClass> pair_class;
  std::vector<BoundReport> reports;
  std::string error;  // non-empty when the trial could not be evaluated

  bool ok() const { return error.empty(); }
};

/// Haar-distributed pure state: i.i.d. complex Gaussians, normalized.
inline StateVector haar_random_state(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidState("dimension must be >= 1");
  for (;;) {
    ComplexVector amps(d);
    for (auto& z : amps) z = rng.complex_normal();
    if (vector_norm(amps) > kTolerances.zero_vector) return normalize(amps);
  }
}

inline StateVector haar_random_state(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state(d, rng);
}

namespace detail {

/// v - <u|v> u, applied twice. u must be unit norm.
inline void project_out(ComplexVector& v, const StateVector& u) {
  for (int pass = 0; pass < 2; ++pass) {
    const Complex overlap = inner_product(u.amps(), std::span<const Complex>(v));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= overlap * u[i];
  }
}

inline constexpr int kMaxResamples = 8;

}  // namespace detail

/// Haar-random phi and a second state orthogonalized against it.
inline std::pair<StateVector, StateVector> random_orthogonal_pair(std::size_t d, Rng& rng) {
  if (d < 2) throw InvalidState("orthogonal pairs need d >= 2");
  auto phi = haar_random_state(d, rng);
  for (int attempt = 0; attempt < detail::kMaxResamples; ++attempt) {
    ComplexVector raw(d);
    for (auto& z : raw) z = rng.complex_normal();
    const double before = vector_norm(raw);
    detail::project_out(raw, phi);
    if (vector_norm(raw) > 1e-8 * before) return {std::move(phi), normalize(raw)};
  }
  throw DegeneratePair("second sample stayed parallel to the first after resampling");
}

inline std::pair<StateVector, StateVector> random_orthogonal_pair(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal_pair(d, rng);
}

/// phi Haar on indices [0, first), psi Haar on [first, first + second);
/// every other amplitude exactly zero. With permute, one random index
/// permutation is applied to both states.
inline std::pair<StateVector, StateVector> random_disjoint_support_pair(std::size_t d, Split split,
                                                                        Rng& rng, bool permute = false) {
  if (split.first == 0 || split.second == 0 || split.first + split.second > d)
    throw BadSplit("invalid split (" + std::to_string(split.first) + ", " +
                   std::to_string(split.second) + ") for d = " + std::to_string(d));
  const auto a = haar_random_state(split.first, rng);
  const auto b = haar_random_state(split.second, rng);
  ComplexVector phi(d), psi(d);
  std::copy(a.amps().begin(), a.amps().end(), phi.begin());
  std::copy(b.amps().begin(), b.amps().end(), psi.begin() + static_cast<std::ptrdiff_t>(split.first));
  if (permute) {
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    for (std::size_t i = d - 1; i > 0; --i)  // Fisher-Yates
      std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1))]);
    ComplexVector pp(d), qq(d);
    for (std::size_t i = 0; i < d; ++i) {
      pp[perm[i]] = phi[i];
      qq[perm[i]] = psi[i];
    }
    phi.swap(pp);
    psi.swap(qq);
  }
  return {StateVector::from_amplitudes(std::move(phi)), StateVector::from_amplitudes(std::move(psi))};
}

inline std::pair<StateVector, StateVector> random_disjoint_support_pair(const EnsembleConfig& config,
                                                                        Rng& rng) {
  return random_disjoint_support_pair(config.dim, config.split.value_or(default_split(config.dim)), rng,
                                      config.permute_indices);
}

/// Two independent Haar states, resampled until |<phi|psi>| exceeds the
/// orthogonality threshold.
inline std::pair<StateVector, StateVector> random_nonorthogonal_pair(std::size_t d, Rng& rng) {
  for (int attempt = 0; attempt < detail::kMaxResamples; ++attempt) {
    auto phi = haar_random_state(d, rng);
    auto psi = haar_random_state(d, rng);
    if (classify_pair(phi, psi).tag == PairTag::NonOrthogonal) return {std::move(phi), std::move(psi)};
  }
  throw DegeneratePair("could not draw a non-orthogonal pair");
}

/// alpha = cos(theta), beta = sin(theta) e^{i phi}; theta ~ U[0, pi/2], phi ~ U[0, 2 pi).
inline SuperpositionCoefficients random_coefficients(Rng& rng) {
  const double theta = rng.uniform(0.0, 0.5 * std::numbers::pi);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return SuperpositionCoefficients::from_angles(theta, phi);
}

inline SuperpositionCoefficients random_coefficients(std::uint64_t seed) {
  Rng rng(seed);
  return random_coefficients(rng);
}

/// State pair of the requested kind.
inline std::pair<StateVector, StateVector> random_pair(const EnsembleConfig& config, Rng& rng) {
  switch (config.pair_kind) {
    case PairKind::DisjointSupport: return random_disjoint_support_pair(config, rng);
    case PairKind::OrthogonalSameSpace: return random_orthogonal_pair(config.dim, rng);
    case PairKind::NonOrthogonal: return random_nonorthogonal_pair(config.dim, rng);
    case PairKind::Arbitrary: {
      auto phi = haar_random_state(config.dim, rng);
      auto psi = haar_random_state(config.dim, rng);
      return {std::move(phi), std::move(psi)};
    }
  }
  throw DomainError("unknown pair kind");
}

/// One trial, fully determined by (config, index).
inline TrialRecord run_trial(const EnsembleConfig& config, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(config.seed, index);
  Rng rng(rec.seed);
  try {
    auto [phi, psi] = random_pair(config, rng);
    const auto c = random_coefficients(rng);
    rec.pair_class = classify_pair(phi, psi);
    rec.reports = evaluate_all(c, phi, psi, config.tolerance);
  } catch (const CoherenceError& e) {
    rec.error = e.what();
    rec.reports.clear();
  }
  return rec;
}

/// Runs config.trials trials on up to `workers` threads (0 = hardware
/// concurrency). The result is ordered by trial index and does not depend
/// on the worker count.
inline std::vector<TrialRecord> run_ensemble(const EnsembleConfig& config, unsigned workers = 1) {
  if (config.dim < 2) throw InvalidState("ensemble dimension must be >= 2");
  if (config.pair_kind == PairKind::DisjointSupport) {
    const auto split = config.split.value_or(default_split(config.dim));
    if (split.first == 0 || split.second == 0 || split.first + split.second > config.dim)
      throw BadSplit("invalid split for d = " + std::to_string(config.dim));
  }
  std::vector<TrialRecord> records(config.trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(config.trials, 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < config.trials; k = next++) records[k] = run_trial(config, k);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

}  // namespace coherence

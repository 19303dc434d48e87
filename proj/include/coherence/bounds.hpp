#pragma once

// Each coherence-of-superposition bound evaluated as an explicit
// (lhs, rhs, slack, verdict) record.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coherence/entropy.hpp"
#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/superpose.hpp"
#include "coherence/tolerances.hpp"

namespace coherence {

enum class BoundId { T1Equality, GainLe1, T2Upper, T3Upper, T4LowerA, T4LowerB };

enum class BoundKind { Equality, Upper, Lower };

inline constexpr BoundId kAllBounds[] = {BoundId::T1Equality, BoundId::GainLe1,
                                         BoundId::T2Upper,    BoundId::T3Upper,
                                         BoundId::T4LowerA,   BoundId::T4LowerB};

inline std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::T1Equality: return "T1_EQUALITY";
    case BoundId::GainLe1: return "GAIN_LE_1";
    case BoundId::T2Upper: return "T2_UPPER";
    case BoundId::T3Upper: return "T3_UPPER";
    case BoundId::T4LowerA: return "T4_LOWER_A";
    case BoundId::T4LowerB: return "T4_LOWER_B";
  }
  return "?";
}

inline std::optional<BoundId> parse_bound_id(std::string_view text) {
  for (BoundId id : kAllBounds)
    if (to_string(id) == text) return id;
  return std::nullopt;
}

inline BoundKind kind_of(BoundId id) {
  switch (id) {
    case BoundId::T1Equality: return BoundKind::Equality;
    case BoundId::T4LowerA:
    case BoundId::T4LowerB: return BoundKind::Lower;
    default: return BoundKind::Upper;
  }
}

/// One bound evaluated at one input triple.
///
/// slack is rhs - lhs for upper bounds and lhs - rhs for lower bounds; a
/// bound holds when slack >= -tolerance. For the equality bound slack holds
/// the residual |lhs - rhs| and the bound holds when it is <= tolerance.
struct BoundReport {
  BoundId bound_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  double tolerance = 0.0;
  std::uint64_t inputs_digest = 0;
};

/// FNV-1a over the IEEE-754 bit patterns of (alpha, beta, phi, psi).
inline std::uint64_t inputs_digest(const SuperpositionCoefficients& c, const StateVector& phi,
                                   const StateVector& psi) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    for (int k = 0; k < 8; ++k) {
      h ^= (bits >> (8 * k)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_c = [&mix](Complex z) {
    mix(z.real());
    mix(z.imag());
  };
  mix_c(c.alpha());
  mix_c(c.beta());
  for (const auto& z : phi.amps()) mix_c(z);
  for (const auto& z : psi.amps()) mix_c(z);
  return h;
}

namespace detail {

inline BoundReport make_report(BoundId id, double lhs, double rhs, double tolerance,
                               std::uint64_t digest) {
  BoundReport r{id, lhs, rhs, 0.0, false, tolerance, digest};
  switch (kind_of(id)) {
    case BoundKind::Equality:
      r.slack = std::abs(lhs - rhs);
      r.satisfied = r.slack <= tolerance;
      break;
    case BoundKind::Upper:
      r.slack = rhs - lhs;
      r.satisfied = r.slack >= -tolerance;
      break;
    case BoundKind::Lower:
      r.slack = lhs - rhs;
      r.satisfied = r.slack >= -tolerance;
      break;
  }
  return r;
}

inline void require_same_dim(const StateVector& phi, const StateVector& psi) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch(phi.dim(), psi.dim());
}

/// |alpha|^2 C(phi) + |beta|^2 C(psi) + h(|alpha|^2).
inline double mixed_term_budget(const SuperpositionCoefficients& c, double c_phi, double c_psi,
                                const Tolerances& tol) {
  return c.alpha_sq() * c_phi + c.beta_sq() * c_psi + binary_entropy(c.alpha_sq(), tol);
}

inline StateVector normalized_superposition(const SuperpositionCoefficients& c,
                                            const StateVector& phi, const StateVector& psi,
                                            const Tolerances& tol) {
  auto omega = superpose(c, phi, psi, tol);
  if (!omega.normalized) throw ZeroVector("superposition alpha|phi> + beta|psi> vanishes");
  return *omega.normalized;
}

}  // namespace detail

/// Disjoint-support equality:
/// C(omega) = |alpha|^2 C(phi) + |beta|^2 C(psi) + h(|alpha|^2).
inline BoundReport theorem1_equality(const SuperpositionCoefficients& c, const StateVector& phi,
                                     const StateVector& psi, double tolerance = kTolerances.bound_slack,
                                     const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  if (classify_pair(phi, psi, tol).tag != PairTag::DisjointSupport)
    throw WrongPairClass("T1_EQUALITY requires disjoint incoherent-basis support");
  const auto omega = detail::normalized_superposition(c, phi, psi, tol);
  const double lhs = pure_state_coherence(omega, tol);
  const double rhs = detail::mixed_term_budget(c, pure_state_coherence(phi, tol),
                                               pure_state_coherence(psi, tol), tol);
  return detail::make_report(BoundId::T1Equality, lhs, rhs, tolerance, inputs_digest(c, phi, psi));
}

/// Coherence gain C(omega) - |alpha|^2 C(phi) - |beta|^2 C(psi) <= 1 for
/// disjoint-support pairs.
inline BoundReport max_gain(const SuperpositionCoefficients& c, const StateVector& phi,
                            const StateVector& psi, double tolerance = kTolerances.bound_slack,
                            const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  if (classify_pair(phi, psi, tol).tag != PairTag::DisjointSupport)
    throw WrongPairClass("GAIN_LE_1 requires disjoint incoherent-basis support");
  const auto omega = detail::normalized_superposition(c, phi, psi, tol);
  const double gain = pure_state_coherence(omega, tol) - c.alpha_sq() * pure_state_coherence(phi, tol) -
                      c.beta_sq() * pure_state_coherence(psi, tol);
  return detail::make_report(BoundId::GainLe1, gain, 1.0, tolerance, inputs_digest(c, phi, psi));
}

/// Orthogonal pair: C(omega) <= 2 [|alpha|^2 C(phi) + |beta|^2 C(psi) + h(|alpha|^2)].
inline BoundReport theorem2_upper(const SuperpositionCoefficients& c, const StateVector& phi,
                                  const StateVector& psi, double tolerance = kTolerances.bound_slack,
                                  const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  if (std::abs(inner_product(phi, psi)) > tol.orthogonality)
    throw WrongPairClass("T2_UPPER requires orthogonal states");
  const auto omega = detail::normalized_superposition(c, phi, psi, tol);
  const double lhs = pure_state_coherence(omega, tol);
  const double rhs = 2.0 * detail::mixed_term_budget(c, pure_state_coherence(phi, tol),
                                                     pure_state_coherence(psi, tol), tol);
  return detail::make_report(BoundId::T2Upper, lhs, rhs, tolerance, inputs_digest(c, phi, psi));
}

/// Arbitrary pair with s = |alpha phi + beta psi| > 0:
/// s^2 C(T1) <= 2 [|alpha|^2 C(phi) + |beta|^2 C(psi) + h(|alpha|^2)].
inline BoundReport theorem3_upper(const SuperpositionCoefficients& c, const StateVector& phi,
                                  const StateVector& psi, double tolerance = kTolerances.bound_slack,
                                  const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  const auto sum = superpose(c, phi, psi, tol);
  if (!sum.normalized) throw ZeroVector("T3_UPPER: superposition alpha|phi> + beta|psi> vanishes");
  const double lhs = sum.norm * sum.norm * pure_state_coherence(*sum.normalized, tol);
  const double rhs = 2.0 * detail::mixed_term_budget(c, pure_state_coherence(phi, tol),
                                                     pure_state_coherence(psi, tol), tol);
  return detail::make_report(BoundId::T3Upper, lhs, rhs, tolerance, inputs_digest(c, phi, psi));
}

struct Theorem4Reports {
  BoundReport branch_a;
  BoundReport branch_b;

  /// max(rhs_A, rhs_B): the combined lower bound. May be negative (vacuous).
  double combined_rhs() const { return std::max(branch_a.rhs, branch_b.rhs); }
};

/// Two-branch lower bound on s^2 C(T1):
///   A: (|alpha|^2/2) C(phi) - |beta|^2 C(psi) - (s^2 + |beta|^2) h(|beta|^2 / (s^2 + |beta|^2))
///   B: the same with (alpha, phi) and (beta, psi) exchanged.
inline Theorem4Reports theorem4_lower(const SuperpositionCoefficients& c, const StateVector& phi,
                                      const StateVector& psi, double tolerance = kTolerances.bound_slack,
                                      const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  const auto sum = superpose(c, phi, psi, tol);
  if (!sum.normalized) throw ZeroVector("T4_LOWER: superposition alpha|phi> + beta|psi> vanishes");
  const double s2 = sum.norm * sum.norm;
  const double lhs = s2 * pure_state_coherence(*sum.normalized, tol);
  const double c_phi = pure_state_coherence(phi, tol);
  const double c_psi = pure_state_coherence(psi, tol);
  const double a2 = c.alpha_sq();
  const double b2 = c.beta_sq();
  const double rhs_a = 0.5 * a2 * c_phi - b2 * c_psi - (s2 + b2) * binary_entropy(b2 / (s2 + b2), tol);
  const double rhs_b = 0.5 * b2 * c_psi - a2 * c_phi - (s2 + a2) * binary_entropy(a2 / (s2 + a2), tol);
  const auto digest = inputs_digest(c, phi, psi);
  return {detail::make_report(BoundId::T4LowerA, lhs, rhs_a, tolerance, digest),
          detail::make_report(BoundId::T4LowerB, lhs, rhs_b, tolerance, digest)};
}

/// Evaluates one named bound. Preconditions of that bound apply.
inline BoundReport evaluate_bound(BoundId id, const SuperpositionCoefficients& c, const StateVector& phi,
                                  const StateVector& psi, double tolerance = kTolerances.bound_slack,
                                  const Tolerances& tol = kTolerances) {
  switch (id) {
    case BoundId::T1Equality: return theorem1_equality(c, phi, psi, tolerance, tol);
    case BoundId::GainLe1: return max_gain(c, phi, psi, tolerance, tol);
    case BoundId::T2Upper: return theorem2_upper(c, phi, psi, tolerance, tol);
    case BoundId::T3Upper: return theorem3_upper(c, phi, psi, tolerance, tol);
    case BoundId::T4LowerA: return theorem4_lower(c, phi, psi, tolerance, tol).branch_a;
    case BoundId::T4LowerB: return theorem4_lower(c, phi, psi, tolerance, tol).branch_b;
  }
  throw DomainError("unknown bound id");
}

/// Every bound applicable to the pair's class: T1 and the gain bound for
/// disjoint support, T2 for any orthogonal pair, T3 otherwise, and both
/// lower-bound branches whenever the superposition is non-zero.
inline std::vector<BoundReport> evaluate_all(const SuperpositionCoefficients& c, const StateVector& phi,
                                             const StateVector& psi,
                                             double tolerance = kTolerances.bound_slack,
                                             const Tolerances& tol = kTolerances) {
  detail::require_same_dim(phi, psi);
  std::vector<BoundReport> out;
  const auto cls = classify_pair(phi, psi, tol);
  const auto sum = superpose(c, phi, psi, tol);
  switch (cls.tag) {
    case PairTag::DisjointSupport:
      out.push_back(theorem1_equality(c, phi, psi, tolerance, tol));
      out.push_back(max_gain(c, phi, psi, tolerance, tol));
      out.push_back(theorem2_upper(c, phi, psi, tolerance, tol));
      break;
    case PairTag::OrthogonalSameSpace:
      out.push_back(theorem2_upper(c, phi, psi, tolerance, tol));
      break;
    case PairTag::NonOrthogonal:
      if (sum.normalized) out.push_back(theorem3_upper(c, phi, psi, tolerance, tol));
      break;
  }
  if (sum.normalized) {
    auto t4 = theorem4_lower(c, phi, psi, tolerance, tol);
    out.push_back(t4.branch_a);
    out.push_back(t4.branch_b);
  }
  return out;
}

}  // namespace coherence

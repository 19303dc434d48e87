#pragma once

// Two-term superpositions alpha|phi> + beta|psi>, the normalized sum and
// difference states, pair classification and the algebraic identities the
// bound proofs rest on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/tolerances.hpp"

namespace coherence {

/// (alpha, beta) with |alpha|^2 + |beta|^2 = 1.
class SuperpositionCoefficients {
 public:
  static SuperpositionCoefficients make(Complex alpha, Complex beta, double tol = kTolerances.norm) {
    if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(beta)))
      throw DomainError("superposition coefficients must be finite");
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > tol)
      throw DomainError("|alpha|^2 + |beta|^2 = " + std::to_string(n2) + ", expected 1");
    return SuperpositionCoefficients(alpha, beta);
  }

  /// alpha = cos(theta), beta = sin(theta) e^{i phi}.
  static SuperpositionCoefficients from_angles(double theta, double phi) {
    return SuperpositionCoefficients(std::cos(theta), std::sin(theta) * std::polar(1.0, phi));
  }

  /// Real, non-negative coefficients with |alpha|^2 = alpha_sq.
  static SuperpositionCoefficients from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0))
      throw DomainError("|alpha|^2 must lie in [0, 1], got " + std::to_string(alpha_sq));
    return SuperpositionCoefficients(std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq));
  }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  double alpha_sq() const { return std::norm(alpha_); }
  double beta_sq() const { return std::norm(beta_); }

  /// (beta, alpha).
  SuperpositionCoefficients swapped() const { return SuperpositionCoefficients(beta_, alpha_); }

 private:
  SuperpositionCoefficients(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {}
  Complex alpha_;
  Complex beta_;
};

struct SuperposedState {
  ComplexVector raw;                     // alpha|phi> + beta|psi>, unnormalized
  double norm = 0.0;                     // s = |raw|
  std::optional<StateVector> normalized; // absent when s <= zero tolerance
};

namespace detail {

inline ComplexVector combine(const SuperpositionCoefficients& c, const StateVector& phi,
                             const StateVector& psi, double sign) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch(phi.dim(), psi.dim());
  ComplexVector raw(phi.dim());
  const Complex b = sign * c.beta();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = c.alpha() * phi[i] + b * psi[i];
  return raw;
}

inline SuperposedState make_superposed(ComplexVector raw, double zero_tol) {
  SuperposedState out;
  out.norm = vector_norm(raw);
  if (out.norm > zero_tol) out.normalized = normalize(raw, zero_tol);
  out.raw = std::move(raw);
  return out;
}

}  // namespace detail

/// alpha|phi> + beta|psi> together with its norm and normalized direction.
inline SuperposedState superpose(const SuperpositionCoefficients& c, const StateVector& phi,
                                 const StateVector& psi, const Tolerances& tol = kTolerances) {
  return detail::make_superposed(detail::combine(c, phi, psi, +1.0), tol.zero_vector);
}

/// alpha|phi> - beta|psi>.
inline SuperposedState superpose_difference(const SuperpositionCoefficients& c,
                                            const StateVector& phi, const StateVector& psi,
                                            const Tolerances& tol = kTolerances) {
  return detail::make_superposed(detail::combine(c, phi, psi, -1.0), tol.zero_vector);
}

struct TStates {
  StateVector sum;         // (alpha|phi> + beta|psi>) / s+
  StateVector difference;  // (alpha|phi> - beta|psi>) / s-
  double sum_norm;
  double difference_norm;
};

inline TStates t_states(const SuperpositionCoefficients& c, const StateVector& phi,
                        const StateVector& psi, const Tolerances& tol = kTolerances) {
  auto plus = superpose(c, phi, psi, tol);
  auto minus = superpose_difference(c, phi, psi, tol);
  if (!plus.normalized) throw ZeroVector("sum branch alpha|phi> + beta|psi> vanishes");
  if (!minus.normalized) throw ZeroVector("difference branch alpha|phi> - beta|psi> vanishes");
  return TStates{*plus.normalized, *minus.normalized, plus.norm, minus.norm};
}

enum class PairTag { DisjointSupport, OrthogonalSameSpace, NonOrthogonal };

inline std::string_view to_string(PairTag tag) {
  switch (tag) {
    case PairTag::DisjointSupport: return "DisjointSupport";
    case PairTag::OrthogonalSameSpace: return "OrthogonalSameSpace";
    case PairTag::NonOrthogonal: return "NonOrthogonal";
  }
  return "?";
}

struct PairClass {
  PairTag tag;
  Complex overlap;  // <phi|psi>
};

/// Disjoint support wins over plain orthogonality.
inline PairClass classify_pair(const StateVector& phi, const StateVector& psi,
                               const Tolerances& tol = kTolerances) {
  const Complex overlap = inner_product(phi, psi);
  bool disjoint = true;
  for (std::size_t i = 0; i < phi.dim() && disjoint; ++i)
    disjoint = std::min(std::abs(phi[i]), std::abs(psi[i])) <= tol.support;
  if (disjoint) return {PairTag::DisjointSupport, overlap};
  if (std::abs(overlap) <= tol.orthogonality) return {PairTag::OrthogonalSameSpace, overlap};
  return {PairTag::NonOrthogonal, overlap};
}

/// Max-abs residual of
///   1/2 diag(alpha phi + beta psi) + 1/2 diag(alpha phi - beta psi)
///     = |alpha|^2 diag(phi) + |beta|^2 diag(psi)
/// where diag(v)_i = |v_i|^2. Holds for every input, orthogonal or not.
inline double mixing_identity_residual(const SuperpositionCoefficients& c, const StateVector& phi,
                                       const StateVector& psi) {
  const auto plus = detail::combine(c, phi, psi, +1.0);
  const auto minus = detail::combine(c, phi, psi, -1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.dim(); ++i) {
    const double lhs = 0.5 * std::norm(plus[i]) + 0.5 * std::norm(minus[i]);
    const double rhs = c.alpha_sq() * std::norm(phi[i]) + c.beta_sq() * std::norm(psi[i]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// Same identity written through the normalized sum/difference states:
///   (s+^2/2) diag(T1) + (s-^2/2) diag(T2) = |alpha|^2 diag(phi) + |beta|^2 diag(psi).
/// Throws ZeroVector if either branch vanishes.
inline double mixing_identity_residual_t_states(const SuperpositionCoefficients& c,
                                                const StateVector& phi, const StateVector& psi,
                                                const Tolerances& tol = kTolerances) {
  const auto t = t_states(c, phi, psi, tol);
  const double wp = 0.5 * t.sum_norm * t.sum_norm;
  const double wm = 0.5 * t.difference_norm * t.difference_norm;
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.dim(); ++i) {
    const double lhs = wp * std::norm(t.sum[i]) + wm * std::norm(t.difference[i]);
    const double rhs = c.alpha_sq() * std::norm(phi[i]) + c.beta_sq() * std::norm(psi[i]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// | |alpha phi + beta psi|^2 + |alpha phi - beta psi|^2 - 2 |.
inline double norm_identity_residual(const SuperpositionCoefficients& c, const StateVector& phi,
                                     const StateVector& psi) {
  const double sp = squared_norm(detail::combine(c, phi, psi, +1.0));
  const double sm = squared_norm(detail::combine(c, phi, psi, -1.0));
  return std::abs(sp + sm - 2.0);
}

}  // namespace coherence

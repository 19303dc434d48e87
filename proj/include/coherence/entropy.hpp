#pragma once

// Entropy functionals in bits and the relative entropy of coherence.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "coherence/errors.hpp"
#include "coherence/linalg.hpp"
#include "coherence/tolerances.hpp"

namespace coherence {

/// -sum p log2 p over raw weights, skipping entries below the probability floor.
inline double entropy_of_weights(std::span<const double> p,
                                 double floor = kTolerances.probability_floor) {
  double h = 0.0;
  for (double x : p)
    if (x >= floor) h -= x * std::log2(x);
  return h > 0.0 ? h : 0.0;
}

/// Shannon entropy in bits. Lies in [0, log2 d].
inline double shannon_entropy(const DiagonalDistribution& p, const Tolerances& tol = kTolerances) {
  return entropy_of_weights(p.probs(), tol.probability_floor);
}

/// h(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x, const Tolerances& tol = kTolerances) {
  if (!(x >= -tol.domain && x <= 1.0 + tol.domain))
    throw DomainError("binary entropy argument " + std::to_string(x) + " outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  const double w[2] = {x, 1.0 - x};
  return entropy_of_weights(w, tol.probability_floor);
}

/// S(rho): Shannon entropy of the spectrum. Eigenvalues slightly below zero
/// (within the negative-eigenvalue tolerance) count as zero.
inline double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = kTolerances) {
  auto eig = hermitian_eigenvalues(rho.matrix(), tol);
  for (double& e : eig) {
    if (e < -tol.negative_eigenvalue)
      throw ConsistencyError("density matrix eigenvalue " + std::to_string(e) + " is negative");
    if (e < 0.0) e = 0.0;
  }
  return entropy_of_weights(eig, tol.probability_floor);
}

namespace detail {

inline double clamp_coherence(double c, const Tolerances& tol) {
  if (c < -tol.coherence_clamp)
    throw ConsistencyError("relative entropy of coherence came out negative: " + std::to_string(c));
  return c > 0.0 ? c : 0.0;
}

}  // namespace detail

/// C_re(rho) = S(rho_diag) - S(rho).
inline double relative_entropy_coherence(const DensityMatrix& rho,
                                         const Tolerances& tol = kTolerances) {
  const double c = shannon_entropy(dephase_mixed(rho), tol) - von_neumann_entropy(rho, tol);
  return detail::clamp_coherence(c, tol);
}

/// C_re(|psi><psi|) = H(|psi_i|^2); no eigendecomposition needed.
inline double pure_state_coherence(const StateVector& psi, const Tolerances& tol = kTolerances) {
  return shannon_entropy(dephase_pure(psi), tol);
}

}  // namespace coherence

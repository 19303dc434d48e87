#pragma once

namespace coherence {

// Numerical thresholds shared by the library, the tests and the CLI.
struct Tolerances {
  double norm = 1e-10;            // unit-norm / unit-trace checks
  double hermiticity = 1e-12;     // |H_ij - conj(H_ji)|
  double bound_slack = 1e-9;      // default verdict tolerance for bound reports
  double zero_vector = 1e-12;     // a vector at or below this norm is treated as zero
  double orthogonality = 1e-10;   // |<phi|psi>| at or below this is orthogonal
  double support = 1e-12;         // amplitude magnitude counted as outside the support
  double negative_eigenvalue = 1e-10;
  double probability_floor = 1e-15;  // probabilities below this contribute 0 to entropies
  double coherence_clamp = 1e-9;     // C_re in [-clamp, 0) is rounded up to 0
  double domain = 1e-12;             // slop allowed on [0,1] arguments
  double jacobi_off_diagonal = 1e-12;
  int jacobi_max_sweeps = 100;
};

inline constexpr Tolerances kTolerances{};

}  // namespace coherence

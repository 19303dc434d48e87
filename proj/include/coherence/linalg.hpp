#pragma once

// Dense complex linear algebra in the computational (incoherent) basis:
// pure states, density matrices, dephasing and a Hermitian eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coherence/errors.hpp"
#include "coherence/tolerances.hpp"

namespace coherence {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline double squared_norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

inline double vector_norm(std::span<const Complex> v) { return std::sqrt(squared_norm(v)); }

/// Unit-norm amplitude vector. Instances always satisfy the norm invariant.
class StateVector {
 public:
  /// Validates an already-normalized amplitude list.
  static StateVector from_amplitudes(ComplexVector amps, double tol = kTolerances.norm) {
    if (amps.empty()) throw InvalidState("state vector must have dimension >= 1");
    for (const auto& z : amps) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidState("state vector has a non-finite amplitude");
    }
    const double n2 = squared_norm(amps);
    if (std::abs(n2 - 1.0) > tol)
      throw InvalidState("state vector is not normalized (|v|^2 = " + std::to_string(n2) + ")");
    return StateVector(std::move(amps));
  }

  /// |index> in dimension d.
  static StateVector basis(std::size_t d, std::size_t index) {
    if (d == 0 || index >= d) throw InvalidState("basis index out of range");
    ComplexVector amps(d);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
  }

  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amps() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// e^{i theta} |psi>.
  StateVector with_phase(double theta) const {
    const Complex phase = std::polar(1.0, theta);
    ComplexVector out(amps_);
    for (auto& z : out) z *= phase;
    return StateVector(std::move(out));
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  explicit StateVector(ComplexVector amps) : amps_(std::move(amps)) {}
  friend StateVector normalize(std::span<const Complex>, double);

  ComplexVector amps_;
};

/// v / |v|. Throws ZeroVector when |v| <= zero_tol.
inline StateVector normalize(std::span<const Complex> v, double zero_tol = kTolerances.zero_vector) {
  if (v.empty()) throw InvalidState("cannot normalize an empty vector");
  const double n = vector_norm(v);
  if (!(n > zero_tol)) throw ZeroVector("cannot normalize a vector of norm " + std::to_string(n));
  ComplexVector out(v.begin(), v.end());
  for (auto& z : out) z /= n;
  return StateVector(std::move(out));
}

inline Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

/// <a|b>, antilinear in the first argument.
inline Complex inner_product(const StateVector& a, const StateVector& b) {
  return inner_product(a.amps(), b.amps());
}

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(const std::vector<ComplexVector>& rows) {
    ComplexMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw DimensionMismatch(rows[i].size(), rows.size());
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm_squared() const {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return acc;
  }

  double off_diagonal_norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (i != j) acc += std::norm((*this)(i, j));
    return std::sqrt(acc);
  }

  bool is_hermitian(double tol = kTolerances.hermiticity) const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

 private:
  std::size_t dim_ = 0;
  ComplexVector data_;
};

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Cyclic complex Jacobi: each (p, q) rotation first removes the phase of
/// H_pq with a diagonal unitary, then applies a real Givens rotation that
/// annihilates the now-real off-diagonal pair. Sweeps repeat until the
/// off-diagonal Frobenius norm drops below tol.jacobi_off_diagonal.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                                 const Tolerances& tol = kTolerances) {
  const std::size_t n = h.dim();
  if (n == 0) return {};
  if (!h.is_hermitian(tol.hermiticity)) throw NotHermitian("matrix is not Hermitian");

  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  int sweep = 0;
  while (a.off_diagonal_norm() >= tol.jacobi_off_diagonal) {
    if (sweep++ == tol.jacobi_max_sweeps)
      throw NoConvergence("Jacobi eigensolver did not converge in " +
                          std::to_string(tol.jacobi_max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

/// Probability vector on the incoherent basis (the diagonal of a dephased state).
class DiagonalDistribution {
 public:
  static DiagonalDistribution from_probabilities(std::vector<double> probs,
                                                 double tol = kTolerances.norm) {
    if (probs.empty()) throw InvalidState("distribution must have dimension >= 1");
    double total = 0.0;
    for (double p : probs) {
      if (!(p >= -tol)) throw InvalidState("distribution has a negative entry");
      total += p;
    }
    if (std::abs(total - 1.0) > tol)
      throw InvalidState("distribution does not sum to 1 (sum = " + std::to_string(total) + ")");
    for (double& p : probs) p = std::max(p, 0.0);
    return DiagonalDistribution(std::move(probs));
  }

  std::size_t dim() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  explicit DiagonalDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(ComplexMatrix m, const Tolerances& tol = kTolerances) {
    if (m.dim() == 0) throw InvalidState("density matrix must have dimension >= 1");
    if (!m.is_hermitian(tol.hermiticity)) throw NotHermitian("density matrix is not Hermitian");
    if (std::abs(m.trace() - 1.0) > tol.norm) throw InvalidState("density matrix trace is not 1");
    const auto eig = hermitian_eigenvalues(m, tol);
    if (eig.back() < -tol.negative_eigenvalue)
      throw InvalidState("density matrix has a negative eigenvalue " + std::to_string(eig.back()));
    return DensityMatrix(std::move(m));
  }

  /// |psi><psi|.
  static DensityMatrix pure(const StateVector& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = m(i, i).real();
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix diagonal(const std::vector<double>& probs) {
    const auto dist = DiagonalDistribution::from_probabilities(probs);
    ComplexMatrix m(dist.dim());
    for (std::size_t i = 0; i < dist.dim(); ++i) m(i, i) = dist[i];
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix maximally_mixed(std::size_t d) {
    return diagonal(std::vector<double>(d, 1.0 / static_cast<double>(d)));
  }

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Diagonal of |psi><psi|: p_i = |psi_i|^2.
inline DiagonalDistribution dephase_pure(const StateVector& psi) {
  std::vector<double> probs(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) probs[i] = std::norm(psi[i]);
  return DiagonalDistribution::from_probabilities(std::move(probs));
}

/// Diagonal of rho with all coherences removed.
inline DiagonalDistribution dephase_mixed(const DensityMatrix& rho) {
  std::vector<double> probs(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) probs[i] = rho(i, i).real();
  return DiagonalDistribution::from_probabilities(std::move(probs));
}

}  // namespace coherence

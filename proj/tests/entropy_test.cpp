#include "coherence/entropy.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "test_support.hpp"

namespace coherence {
namespace {

double h_oracle(double x) { return testing::naive_entropy({x, 1.0 - x}); }

TEST(ShannonEntropy, Examples) {
  EXPECT_EQ(shannon_entropy(DiagonalDistribution::from_probabilities({1.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(shannon_entropy(DiagonalDistribution::from_probabilities({0.5, 0.5})), 1.0);
  EXPECT_DOUBLE_EQ(shannon_entropy(DiagonalDistribution::from_probabilities({0.5, 0.25, 0.25})), 1.5);
}

TEST(ShannonEntropy, WithinRange) {
  std::mt19937_64 gen(1);
  for (std::size_t d = 1; d <= 16; ++d) {
    const auto p = DiagonalDistribution::from_probabilities(testing::random_distribution(d, gen));
    const double h = shannon_entropy(p);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(static_cast<double>(d)) + 1e-12);
  }
}

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(1.0 / 3.0), std::log2(3.0) - 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(binary_entropy(1.0 / 3.0), 0.918296, 1e-6);
}

TEST(BinaryEntropy, SymmetricWithMaximumAtHalf) {
  for (int k = 1; k < 100; ++k) {
    const double x = k / 100.0;
    EXPECT_NEAR(binary_entropy(x), binary_entropy(1.0 - x), 1e-15);
    EXPECT_LE(binary_entropy(x), 1.0);
  }
}

TEST(BinaryEntropy, DomainError) {
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_THROW(binary_entropy(-0.1), DomainError);
  EXPECT_NO_THROW(binary_entropy(1.0 + 1e-13));
  EXPECT_NO_THROW(binary_entropy(-1e-13));
}

TEST(VonNeumannEntropy, Examples) {
  std::mt19937_64 gen(2);
  for (std::size_t d = 2; d <= 8; ++d) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(testing::random_state(d, gen))), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d)), std::log2(static_cast<double>(d)), 1e-14);
  }
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal({0.3, 0.7})), h_oracle(0.3), 1e-15);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal({0.3, 0.7})), 0.881291, 1e-6);
}

TEST(RelativeEntropyCoherence, Examples) {
  EXPECT_EQ(relative_entropy_coherence(DensityMatrix::diagonal({0.3, 0.7})), 0.0);
  EXPECT_NEAR(relative_entropy_coherence(DensityMatrix::pure(normalize(ComplexVector{1.0, 1.0}))), 1.0, 1e-12);
}

TEST(RelativeEntropyCoherence, MixedStatesNonNegativeAndBounded) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const auto w = testing::random_distribution(3, gen);
    ComplexMatrix m(d);
    for (double weight : w) {
      const auto psi = testing::random_state(d, gen);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) += weight * psi[i] * std::conj(psi[j]);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
    const auto rho = DensityMatrix::from_matrix(m);
    const double c = relative_entropy_coherence(rho);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, std::log2(static_cast<double>(d)) + 1e-12);
  }
}

TEST(PureStateCoherence, Examples) {
  EXPECT_EQ(pure_state_coherence(StateVector::basis(2, 0)), 0.0);
  EXPECT_EQ(pure_state_coherence(StateVector::basis(2, 1)), 0.0);
  EXPECT_NEAR(pure_state_coherence(normalize(ComplexVector{1.0, 1.0})), 1.0, 1e-15);
  const auto psi = StateVector::from_amplitudes({std::sqrt(0.9), std::sqrt(0.1)});
  EXPECT_NEAR(pure_state_coherence(psi), h_oracle(0.9), 1e-15);
  EXPECT_NEAR(pure_state_coherence(psi), 0.468996, 1e-6);
}

TEST(PureStateCoherence, AgreesWithEigensolverPath) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto psi = testing::random_state(1 + trial % 16, gen);
    EXPECT_NEAR(pure_state_coherence(psi), relative_entropy_coherence(DensityMatrix::pure(psi)), 1e-8);
  }
}

// Concavity and the mixing upper bound, checked on random distributions.
class MixingInequalities : public ::testing::Test {
 protected:
  std::mt19937_64 gen{5};
  std::uniform_real_distribution<double> unit{1e-6, 1.0 - 1e-6};

  static std::vector<double> mix(double lambda, const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = lambda * p[i] + (1.0 - lambda) * q[i];
    return m;
  }
  static double H(const std::vector<double>& p) { return entropy_of_weights(p); }
};

TEST_F(MixingInequalities, ConcavityAndUpperBound) {
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + trial % 15;
    const auto p = testing::random_distribution(d, gen);
    const auto q = testing::random_distribution(d, gen);
    const double lambda = unit(gen);
    const double mixed = H(mix(lambda, p, q));
    const double average = lambda * H(p) + (1.0 - lambda) * H(q);
    EXPECT_LE(average, mixed + 1e-12);
    EXPECT_LE(mixed, average + binary_entropy(lambda) + 1e-12);
  }
}

TEST_F(MixingInequalities, EqualityWitnesses) {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d1 = 1 + trial % 7, d2 = 1 + (trial / 7) % 7;
    auto a = testing::random_distribution(d1, gen);
    auto b = testing::random_distribution(d2, gen);
    std::vector<double> p(d1 + d2, 0.0), q(d1 + d2, 0.0);
    std::copy(a.begin(), a.end(), p.begin());
    std::copy(b.begin(), b.end(), q.begin() + static_cast<std::ptrdiff_t>(d1));
    const double lambda = unit(gen);
    // disjoint supports: upper bound is tight
    EXPECT_NEAR(H(mix(lambda, p, q)), lambda * H(p) + (1.0 - lambda) * H(q) + binary_entropy(lambda), 1e-12);
    // identical distributions: concavity is tight
    EXPECT_NEAR(H(mix(lambda, p, p)), H(p), 1e-12);
  }
}

}  // namespace
}  // namespace coherence

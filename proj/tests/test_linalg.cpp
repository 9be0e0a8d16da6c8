#include <random>

#include <gtest/gtest.h>

#include "cohere/linalg.hpp"
#include "cohere/states.hpp"
#include "support/oracles.hpp"

namespace cohere {
namespace {

Matrix real2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(HermitianMatrix, RejectsAsymmetryAndReportsIt) {
  try {
    HermitianMatrix h(real2(1, 0.5, 0.2, 1));
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const NotHermitianError& e) {
    EXPECT_NEAR(e.max_asymmetry(), 0.3, 1e-15);
  }
}

TEST(HermitianMatrix, SymmetrizesWithinTolerance) {
  HermitianMatrix h(real2(1, 0.5 + 5e-11, 0.5, 1));
  EXPECT_EQ(h(0, 1), h(1, 0));
}

TEST(Eig, IdentityAndDiagonal) {
  EigenDecomposition e = eig(HermitianMatrix::identity(2));
  EXPECT_DOUBLE_EQ(e.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(e.eigenvalues(1), 1.0);

  RealVector d(2);
  d << 1, 3;
  e = eig(HermitianMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(e.eigenvalues(0), 3.0);
  EXPECT_DOUBLE_EQ(e.eigenvalues(1), 1.0);
  EXPECT_NEAR(std::abs(e.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(Eig, PauliX) {
  const EigenDecomposition e = eig(HermitianMatrix(real2(0, 1, 1, 0)));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), -1.0, 1e-15);
}

TEST(Eig, ReconstructsAndIsUnitaryOnRandomInput) {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 6; ++d) {
    const HermitianMatrix a(testing::random_hermitian(d, rng));
    const EigenDecomposition e = eig(a);
    EXPECT_LE((e.reconstruct() - a.matrix()).norm(), 1e-9 * a.matrix().norm());
    EXPECT_LE((e.eigenvectors.adjoint() * e.eigenvectors - Matrix::Identity(d, d)).norm(), 1e-9);
    for (int i = 1; i < d; ++i) EXPECT_GE(e.eigenvalues(i - 1), e.eigenvalues(i));
  }
}

TEST(PositivePart, Examples) {
  RealVector d(2);
  d << 2, -1;
  RealVector expect(2);
  expect << 2, 0;
  EXPECT_LE((positive_part(HermitianMatrix::diagonal(d)).matrix() - HermitianMatrix::diagonal(expect).matrix()).norm(),
            1e-15);

  const HermitianMatrix psd(real2(2, 1, 1, 2));
  EXPECT_LE((positive_part(psd).matrix() - psd.matrix()).norm(), 1e-12);

  EXPECT_LE((positive_part(HermitianMatrix(real2(0, 1, 1, 0))).matrix() - 0.5 * real2(1, 1, 1, 1)).norm(), 1e-12);
}

TEST(PositivePart, SplitsRandomHermitian) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix a(testing::random_hermitian(1 + trial % 6, rng));
    const HermitianMatrix diff = positive_part(a) - positive_part(-a);
    EXPECT_LE((diff.matrix() - a.matrix()).norm(), 1e-8);
  }
}

TEST(SupportProjector, Examples) {
  RealVector d(3);
  d << 0.5, 0.5, 0;
  RealVector expect(3);
  expect << 1, 1, 0;
  EXPECT_LE((support_projector(HermitianMatrix::diagonal(d)).matrix() - HermitianMatrix::diagonal(expect).matrix()).norm(),
            1e-12);

  const HermitianMatrix plus(0.5 * real2(1, 1, 1, 1));
  EXPECT_LE((support_projector(plus).matrix() - plus.matrix()).norm(), 1e-12);

  const HermitianMatrix full(real2(0.7, 0.1, 0.1, 0.3));
  EXPECT_LE((support_projector(full).matrix() - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(SupportProjector, RejectsNegativeSpectrum) {
  RealVector d(2);
  d << 1, -1e-6;
  EXPECT_THROW(support_projector(HermitianMatrix::diagonal(d)), ValidationError);
}

TEST(SupportProjector, IdempotentOnRandomStates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 5;
    const DensityMatrix rho = random_density(d, 1 + trial % d, rng);
    const Matrix p = support_projector(rho.hermitian()).matrix();
    EXPECT_LE((p * p - p).norm(), 1e-9);
    EXPECT_LE((p * rho.matrix() * p - rho.matrix()).norm(), 1e-9);
  }
}

TEST(MatrixPower, Examples) {
  RealVector d(2);
  d << 4, 1;
  RealVector half(2);
  half << 2, 1;
  EXPECT_LE((matrix_power(HermitianMatrix::diagonal(d), 0.5).matrix() - HermitianMatrix::diagonal(half).matrix()).norm(),
            1e-12);

  RealVector sing(2);
  sing << 4, 0;
  RealVector inv(2);
  inv << 0.25, 0;
  EXPECT_LE((matrix_power(HermitianMatrix::diagonal(sing), -1).matrix() - HermitianMatrix::diagonal(inv).matrix()).norm(),
            1e-12);

  const HermitianMatrix a(real2(2, 1, 1, 2));
  EXPECT_LE((matrix_power(a, 1.0).matrix() - a.matrix()).norm(), 1e-12);
}

TEST(MatrixPower, InversePairsGiveSupportProjector) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 5;
    const HermitianMatrix a = random_density(d, 1 + trial % d, rng).hermitian();
    for (double s : {0.5, 1.0}) {
      const Matrix prod = matrix_power(a, s).matrix() * matrix_power(a, -s).matrix();
      EXPECT_LE((prod - support_projector(a).matrix()).norm(), 1e-8);
    }
  }
}

TEST(TraceNorm, Examples) {
  RealVector d(2);
  d << 1, -1;
  EXPECT_DOUBLE_EQ(trace_norm(HermitianMatrix::diagonal(d)), 2.0);
  EXPECT_NEAR(trace_norm(DensityMatrix::maximally_mixed(3).hermitian()), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(trace_norm(HermitianMatrix::zero(3)), 0.0);
}

TEST(Fidelity, Examples) {
  const DensityMatrix zero = DensityMatrix::diagonal({1, 0});
  const DensityMatrix one = DensityMatrix::diagonal({0, 1});
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
  EXPECT_NEAR(fidelity(zero, DensityMatrix::maximally_mixed(2)), 0.5, 1e-12);
}

TEST(Fidelity, SymmetricAndMatchesPureFormula) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    const DensityMatrix a = random_density(d, 1 + trial % d, rng);
    const DensityMatrix b = random_density(d, d, rng);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
    const PureState psi = random_pure_state(d, rng);
    EXPECT_NEAR(fidelity(DensityMatrix::from_pure(psi), b), testing::pure_fidelity(psi.amplitudes(), b.matrix()),
                1e-9);
  }
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3)), ValidationError);
}

}  // namespace
}  // namespace cohere

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cohere/channels.hpp"
#include "cohere/feasibility.hpp"
#include "cohere/monotones.hpp"
#include "cohere/neyman_pearson.hpp"

namespace cohere {
namespace {

DensityMatrix separation_state() {
  Vector a(3);
  a << std::sqrt(5.0 / 8), std::sqrt(3.0 / 16), std::sqrt(3.0 / 16);
  return DensityMatrix::from_pure(PureState(a));
}

DensityMatrix psi(int m, int dim) { return DensityMatrix::from_pure(max_coherent(m, dim)); }
DensityMatrix psi(int m) { return psi(m, m); }

double recomputed(const std::string& name, const DensityMatrix& rho) {
  if (name == "r_delta") return r_delta(rho);
  if (name == "l1") return l1_norm(rho);
  if (name.rfind("renyi_", 0) == 0) return renyi_relative(rho, std::stod(name.substr(6)));
  ADD_FAILURE() << "unknown monotone " << name;
  return 0.0;
}

// Checks the verdict's own evidence independently of the oracle.
void expect_sound(const FeasibilityVerdict& v, const DensityMatrix& rho, const DensityMatrix& sigma) {
  switch (v.status) {
    case FeasibilityStatus::kFeasible: {
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_TRUE(check_cptp(rho.dim(), sigma.dim(), v.witness->choi().matrix()).holds);
      EXPECT_TRUE(is_rho_dio(*v.witness, rho).holds);
      EXPECT_LE((apply(*v.witness, rho).matrix() - sigma.matrix()).norm(), 1e-6);
      break;
    }
    case FeasibilityStatus::kInfeasibleCertified: {
      ASSERT_TRUE(v.certificate.has_value());
      const MonotoneCertificate& c = *v.certificate;
      EXPECT_NEAR(c.value_in, recomputed(c.monotone, rho), 1e-9);
      EXPECT_NEAR(c.value_out, recomputed(c.monotone, sigma), 1e-9);
      EXPECT_GT(c.value_out - c.value_in, 1e-7);
      break;
    }
    case FeasibilityStatus::kUndetermined:
      EXPECT_FALSE(v.witness.has_value());
      EXPECT_FALSE(v.certificate.has_value());
      break;
  }
}

TEST(Feasibility, StatusNames) {
  EXPECT_EQ(to_string(FeasibilityStatus::kFeasible), "feasible");
  EXPECT_EQ(to_string(FeasibilityStatus::kInfeasibleCertified), "infeasible-certified");
  EXPECT_EQ(to_string(FeasibilityStatus::kUndetermined), "undetermined");
}

TEST(Feasibility, SeparationStateReachesCoherentBit) {
  const FeasibilityVerdict v = rho_dio_feasible(separation_state(), psi(2));
  EXPECT_EQ(v.status, FeasibilityStatus::kFeasible);
  expect_sound(v, separation_state(), psi(2));
}

TEST(Feasibility, CannotIncreaseRobustness) {
  for (const DensityMatrix& rho : {psi(2), psi(2, 4)}) {
    const FeasibilityVerdict v = rho_dio_feasible(rho, psi(4));
    ASSERT_EQ(v.status, FeasibilityStatus::kInfeasibleCertified);
    EXPECT_EQ(v.certificate->monotone, "r_delta");
    EXPECT_NEAR(v.certificate->value_in, 1.0, 1e-9);
    EXPECT_NEAR(v.certificate->value_out, 3.0, 1e-9);
    expect_sound(v, rho, psi(4));
  }
}

TEST(Feasibility, IdentityAndDephasingTargets) {
  std::mt19937_64 rng(90);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density(2 + trial % 3, 1 + trial % 2, rng);
    const FeasibilityVerdict same = rho_dio_feasible(rho, rho);
    EXPECT_EQ(same.status, FeasibilityStatus::kFeasible);
    expect_sound(same, rho, rho);
    const FeasibilityVerdict flat = rho_dio_feasible(rho, dephase(rho));
    EXPECT_EQ(flat.status, FeasibilityStatus::kFeasible);
    expect_sound(flat, rho, dephase(rho));
  }
}

TEST(Feasibility, AgreesWithQubitDecider) {
  std::mt19937_64 rng(91);
  int determined = 0;
  const int pairs = 120;
  for (int trial = 0; trial < pairs; ++trial) {
    const DensityMatrix rho = random_density(2, 1 + trial % 2, rng);
    const DensityMatrix sigma = random_density(2, 1 + (trial / 2) % 2, rng);
    const FeasibilityVerdict v = rho_dio_feasible(rho, sigma);
    expect_sound(v, rho, sigma);
    if (v.status == FeasibilityStatus::kUndetermined) continue;
    ++determined;
    EXPECT_EQ(v.status == FeasibilityStatus::kFeasible, qubit_decide(rho, sigma)) << "trial " << trial;
  }
  EXPECT_GE(determined, pairs * 9 / 10);
}

TEST(Feasibility, FeasibleWheneverSufficientConditionHolds) {
  std::mt19937_64 rng(92);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int din = 2 + trial % 3;
    const DensityMatrix rho = random_density(din, 1 + trial % 2, rng);
    const double lambda = std::pow(2.0, dh_zero_closed_form(rho));
    // dephase a random target until R_Delta(omega) + 1 <= lambda; R_Delta is
    // linear along the segment to Delta(omega0)
    const DensityMatrix omega0 = random_density(2 + (trial / 3) % 3, 1 + trial % 3 % 2, rng);
    const double r0 = r_delta(omega0);
    const double r_target = std::min(r0, (lambda - 1) * unit(rng));
    const double t = r0 > 0 ? 1 - r_target / r0 : 1.0;
    const DensityMatrix omega(omega0.hermitian() * (1 - t) + dephase(omega0).hermitian() * t);
    ASSERT_LE(r_delta(omega) + 1, lambda + 1e-9);
    const FeasibilityVerdict v = rho_dio_feasible(rho, omega);
    EXPECT_EQ(v.status, FeasibilityStatus::kFeasible) << "trial " << trial << " residual " << v.residual;
    expect_sound(v, rho, omega);
  }
}

TEST(Feasibility, MaxCoherentInputReachesDilutionTargets) {
  std::mt19937_64 rng(93);
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 2 + trial % 3;
    const DensityMatrix sigma = random_density(m, 1 + trial % m, rng);
    const FeasibilityVerdict v = rho_dio_feasible(psi(m), sigma);
    EXPECT_EQ(v.status, FeasibilityStatus::kFeasible);
    expect_sound(v, psi(m), sigma);
  }
}

TEST(Feasibility, CertificateSearch) {
  EXPECT_FALSE(find_monotone_certificate(psi(3), psi(2), 1e-7).has_value());
  const auto c = find_monotone_certificate(DensityMatrix::diagonal({0.5, 0.5}), psi(2), 1e-7);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->monotone, "r_delta");
}

TEST(Feasibility, TinyBudgetIsUndeterminedWithoutCertificate) {
  std::mt19937_64 rng(94);
  const DensityMatrix rho = random_density(3, 2, rng);
  const DensityMatrix sigma = random_density(2, 2, rng);
  FeasibilityOptions o;
  o.max_iters = 0;
  const FeasibilityVerdict v = rho_dio_feasible(rho, sigma, o);
  expect_sound(v, rho, sigma);
  EXPECT_NE(v.status, FeasibilityStatus::kFeasible);
}

}  // namespace
}  // namespace cohere

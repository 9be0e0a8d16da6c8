#include "cohere/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cohere/monotones.hpp"
#include "cohere/neyman_pearson.hpp"
#include "cohere/tolerance.hpp"

namespace cohere {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::one_shot: return "one_shot";
    case Regime::zero_error: return "zero_error";
    case Regime::asymptotic: return "asymptotic";
  }
  return "unknown";
}

namespace {

double snap(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= tolerances().rounding_guard * std::max(1.0, x)) return nearest;
  return x;
}

RateReport rounded(double raw, long long units, Regime regime, double eps) {
  RateReport r;
  r.raw_value = raw;
  r.units = units;
  r.bits = std::log2(static_cast<double>(units));
  r.regime = regime;
  r.eps = eps;
  return r;
}

RateReport unrounded(double raw, Regime regime) {
  RateReport r;
  r.raw_value = raw;
  r.bits = raw;
  r.regime = regime;
  return r;
}

}  // namespace

long long guarded_floor_pow2(double raw_bits) {
  return std::max(1LL, static_cast<long long>(std::floor(snap(std::exp2(raw_bits)))));
}

long long guarded_ceil(double x) { return std::max(1LL, static_cast<long long>(std::ceil(snap(x)))); }

long long guarded_ceil_pow2(double raw_bits) { return guarded_ceil(std::exp2(raw_bits)); }

RateReport distill_one_shot(const DensityMatrix& rho, double eps) {
  const NPResult np = dh_epsilon(rho, dephase(rho), eps);
  RateReport r = rounded(np.dh_bits, guarded_floor_pow2(np.dh_bits), Regime::one_shot, eps);
  r.duality_gap = np.gap;
  r.cross_check = distill_fidelity(rho, static_cast<double>(r.units)).value;
  return r;
}

RateReport distill_zero_error(const DensityMatrix& rho) {
  const double raw = dh_zero_closed_form(rho);
  return rounded(raw, guarded_floor_pow2(raw), Regime::zero_error, 0.0);
}

RateReport distill_asymptotic(const DensityMatrix& rho) {
  return unrounded(rel_entropy_coherence(rho), Regime::asymptotic);
}

RateReport distill_zero_error_asymptotic(const DensityMatrix& rho) {
  return unrounded(dh_zero_closed_form(rho), Regime::asymptotic);
}

RateReport dilute_zero_error(const DensityMatrix& rho) {
  const double value = r_delta(rho) + 1.0;
  return rounded(std::log2(value), guarded_ceil(value), Regime::zero_error, 0.0);
}

RateReport dilute_asymptotic(const DensityMatrix& rho) {
  return unrounded(rel_entropy_coherence(rho), Regime::asymptotic);
}

RateReport dilute_zero_error_asymptotic(const DensityMatrix& rho) {
  return unrounded(std::log2(r_delta(rho) + 1.0), Regime::asymptotic);
}

double dilution_lower_bound_from_test(double a, double c, double eps) {
  const double theta = std::acos(std::sqrt(std::clamp(1.0 - eps, 0.0, 1.0)));
  const double alpha_a = std::acos(std::sqrt(std::clamp(a, 0.0, 1.0)));
  const double alpha_c = std::acos(std::sqrt(std::clamp(c, 0.0, 1.0)));
  const double half_pi = std::numbers::pi / 2.0;
  const double b_min = std::pow(std::cos(std::min(alpha_a + theta, half_pi)), 2);
  const double c_max = std::pow(std::cos(std::max(alpha_c - theta, 0.0)), 2);
  if (c_max <= 0.0) return 1.0;
  return std::max(1.0, b_min / c_max);
}

namespace {

// Candidate tests for the lower bound: optimal hypothesis tests of rho
// against Delta(rho) over a grid of type-I errors, and projectors onto the
// leading generalized eigenvectors of (rho, Delta rho), the first of which
// attains R_Delta + 1 at eps = 0.
std::vector<HermitianMatrix> lower_bound_tests(const DensityMatrix& rho) {
  std::vector<HermitianMatrix> tests;
  const DensityMatrix delta = dephase(rho);
  for (double e : {0.0, 0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9}) {
    tests.push_back(dh_epsilon(rho, delta, e).primal.hermitian());
  }
  const RealVector diag = delta.diagonal_entries();
  const double tau = truncation_threshold(diag);
  RealVector w(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) w(i) = diag(i) > tau ? 1.0 / std::sqrt(diag(i)) : 0.0;
  const Matrix scaled = w.cast<Complex>().asDiagonal() * rho.matrix() * w.cast<Complex>().asDiagonal();
  const EigenDecomposition e = eig(HermitianMatrix::symmetrized(scaled));
  Matrix span(rho.dim(), 0);
  for (int k = 0; k < rho.dim(); ++k) {
    if (e.eigenvalues(k) <= truncation_threshold(e.eigenvalues)) break;
    span.conservativeResize(Eigen::NoChange, k + 1);
    span.col(k) = w.cast<Complex>().asDiagonal() * e.eigenvectors.col(k);
    Eigen::HouseholderQR<Matrix> qr(span);
    const Matrix q = qr.householderQ() * Matrix::Identity(rho.dim(), k + 1);
    tests.push_back(HermitianMatrix::symmetrized(q * q.adjoint()));
  }
  return tests;
}

}  // namespace

DilutionBracket dilute_one_shot_bounds(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("dilution: eps must lie in [0, 1)");
  const double r_plus_one = r_delta(rho) + 1.0;
  const DensityMatrix delta = dephase(rho);

  // Upper: omega_t = (1-t) rho + t Delta(rho) has R_Delta(omega_t) + 1 =
  // (1-t)(R_Delta(rho) + 1) + t, decreasing in t, while F(rho, omega_t) is
  // concave in t; the best candidate is the largest feasible t.
  auto omega = [&](double t) {
    return DensityMatrix(rho.hermitian() * (1.0 - t) + delta.hermitian() * t);
  };
  auto feasible = [&](double t) { return fidelity(rho, omega(t)) >= 1.0 - eps; };
  double t_ok = 0.0;
  if (eps > 0.0) {
    if (feasible(1.0)) {
      t_ok = 1.0;
    } else {
      double t_bad = 1.0;
      while (t_bad - t_ok > 1e-12) {
        const double mid = 0.5 * (t_ok + t_bad);
        (feasible(mid) ? t_ok : t_bad) = mid;
      }
    }
  }
  const double upper_value = r_delta(omega(t_ok)) + 1.0;

  double lower_value = 1.0;
  if (eps == 0.0) {
    lower_value = r_plus_one;  // F = 1 forces omega = rho
  } else {
    for (const HermitianMatrix& m : lower_bound_tests(rho)) {
      const double a = hs_inner(m, rho.hermitian());
      const double c = hs_inner(m, delta.hermitian());
      lower_value = std::max(lower_value, dilution_lower_bound_from_test(a, c, eps));
    }
  }

  DilutionBracket b;
  b.upper = rounded(std::log2(upper_value), guarded_ceil(upper_value), Regime::one_shot, eps);
  b.lower = rounded(std::log2(lower_value), guarded_ceil(lower_value), Regime::one_shot, eps);
  b.upper_mixing = t_ok;
  return b;
}

AsymptoticRate asymptotic_rate(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (is_incoherent(sigma)) return AsymptoticRate{0.0, true};
  return AsymptoticRate{rel_entropy_coherence(rho) / rel_entropy_coherence(sigma), false};
}

}  // namespace cohere

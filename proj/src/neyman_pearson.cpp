#include "cohere/neyman_pearson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cohere/monotones.hpp"
#include "cohere/tolerance.hpp"

namespace cohere {

TestOperator::TestOperator(const HermitianMatrix& m) : m_(m) {
  const EigenDecomposition e = eig(m_);
  const double lo = e.eigenvalues(e.eigenvalues.size() - 1);
  const double hi = e.eigenvalues(0);
  const double tol = tolerances().psd;
  if (lo < -tol || hi > 1.0 + tol) {
    throw ValidationError("test operator spectrum [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] leaves [0, 1]",
                          std::max(-lo, hi - 1.0));
  }
}

namespace {

// Spectral split of a Hermitian operator at zero: the strictly positive part,
// and the near-zero block |lambda| <= tau that carries the fractional weight.
struct ZeroSplit {
  EigenDecomposition e;
  double tau = 0.0;
};

ZeroSplit split(const HermitianMatrix& a) {
  ZeroSplit s{eig(a), 0.0};
  s.tau = truncation_threshold(s.e.eigenvalues);
  return s;
}

double weight(const EigenDecomposition& e, int k, const HermitianMatrix& w) {
  const Vector& v = e.eigenvectors.col(k);
  return (v.adjoint() * w.matrix() * v)(0, 0).real();
}

// Builds M = P_+ + alpha P_0 hitting <M, w> = target. Eigenvectors are taken
// in decreasing eigenvalue order; if the near-zero block cannot reach the
// target (bracket rounding), the next eigenvectors are added greedily with
// the last one fractional.
HermitianMatrix threshold_operator(const ZeroSplit& s, const HermitianMatrix& w, double target) {
  const EigenDecomposition& e = s.e;
  const int n = static_cast<int>(e.eigenvalues.size());
  Matrix m = Matrix::Zero(n, n);
  double reached = 0.0;
  int k = 0;
  for (; k < n && e.eigenvalues(k) > s.tau; ++k) {
    m += e.eigenvectors.col(k) * e.eigenvectors.col(k).adjoint();
    reached += weight(e, k, w);
  }
  int zero_end = k;
  double zero_weight = 0.0;
  while (zero_end < n && std::abs(e.eigenvalues(zero_end)) <= s.tau) {
    zero_weight += weight(e, zero_end, w);
    ++zero_end;
  }
  const double need = target - reached;
  if (need <= 0.0) return HermitianMatrix::symmetrized(m);
  if (zero_weight >= need && zero_weight > 0.0) {
    const double alpha = std::clamp(need / zero_weight, 0.0, 1.0);
    for (int j = k; j < zero_end; ++j) m += alpha * e.eigenvectors.col(j) * e.eigenvectors.col(j).adjoint();
    return HermitianMatrix::symmetrized(m);
  }
  double remaining = need;
  for (int j = k; j < n && remaining > 0.0; ++j) {
    const double wj = weight(e, j, w);
    const double alpha = wj > remaining ? remaining / wj : 1.0;
    m += alpha * e.eigenvectors.col(j) * e.eigenvectors.col(j).adjoint();
    remaining -= alpha * wj;
  }
  return HermitianMatrix::symmetrized(m);
}

// <P_{>0}(a), w> with the strict sign, so that bisection on it converges to
// the kink itself rather than to the edge of the |lambda| <= tau band.
double positive_weight(const HermitianMatrix& a, const HermitianMatrix& w) {
  const EigenDecomposition e = eig(a);
  double total = 0.0;
  for (int k = 0; k < e.eigenvalues.size() && e.eigenvalues(k) > 0.0; ++k) total += weight(e, k, w);
  return total;
}

double negative_mass(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return (-solver.eigenvalues()).cwiseMax(0.0).sum();
}

double positive_mass(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseMax(0.0).sum();
}

constexpr double kMaxDualT = 1e12;

}  // namespace

NPResult dh_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma, double eps) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("hypothesis test: dimension mismatch " + std::to_string(rho.dim()) + " vs " +
                         std::to_string(sigma.dim()));
  }
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw ValidationError("hypothesis test: eps must lie in [0, 1), got " + std::to_string(eps));
  }
  const Tolerances& tol = tolerances();
  const HermitianMatrix& r = rho.hermitian();
  const HermitianMatrix& s = sigma.hermitian();
  // g(t) = t(1-eps) - Tr(t rho - sigma)_+ = 1 - eps t - Tr(t rho - sigma)_-,
  // using Tr(t rho - sigma) = t - 1.
  auto dual = [&](double t) { return 1.0 - eps * t - negative_mass(r * t - s); };
  auto crossing = [&](double t) { return positive_weight(r * t - s, r) >= 1.0 - eps; };

  NPResult out;
  HermitianMatrix m;
  double best_t = 0.0;
  double best_dual = dual(0.0);

  double t_hi = 1.0;
  while (t_hi <= kMaxDualT && !crossing(t_hi)) t_hi *= 2.0;
  const bool attained = eps > 0.0 && t_hi <= kMaxDualT;

  if (attained) {
    // g is concave with supergradient (1 - eps) - Tr rho M(t); bisect on the
    // sign change of Tr rho P_+(t) - (1 - eps).
    double t_lo = t_hi > 1.0 ? t_hi / 2.0 : 0.0;
    while (t_hi - t_lo > tol.solver_t * std::max(1.0, t_hi)) {
      const double mid = 0.5 * (t_lo + t_hi);
      (crossing(mid) ? t_hi : t_lo) = mid;
    }
    best_t = 0.5 * (t_lo + t_hi);
    best_dual = dual(best_t);
    m = threshold_operator(split(r * best_t - s), r, 1.0 - eps);
  } else {
    // Zero error (or a crossing beyond the search range): the optimum is not
    // attained at finite t. The support projector of rho is optimal at
    // eps = 0; for eps > 0 it is mixed with the last positive projector so
    // that Tr M rho = 1 - eps exactly.
    const HermitianMatrix support = support_projector(r);
    if (eps == 0.0) {
      m = support;
    } else {
      const HermitianMatrix p = threshold_operator(split(r * kMaxDualT - s), r, 0.0);
      const double a = hs_inner(p, r);
      const double beta = a < 1.0 ? std::clamp(eps / (1.0 - a), 0.0, 1.0) : 0.0;
      m = p * beta + support * (1.0 - beta);
    }
    // The gap along t = 2^k decays like 1/t while eigensolver rounding grows
    // like 1e-16 t, so stop as soon as the gap is well inside tolerance.
    const double primal = hs_inner(m, s);
    for (double t = 1.0; t <= kMaxDualT; t *= 2.0) {
      const double g = dual(t);
      if (g > best_dual) {
        best_dual = g;
        best_t = t;
      }
      if (primal - best_dual <= 0.1 * tol.duality_gap) break;
    }
  }

  out.primal = TestOperator(m);
  out.optimal_value = std::max(0.0, hs_inner(m, s));
  out.dual_t = best_t;
  out.dual_value = best_dual;
  out.gap = out.optimal_value - out.dual_value;
  if (out.optimal_value <= 1e-12) {
    out.infinite = true;
    out.dh_bits = std::numeric_limits<double>::infinity();
  } else {
    out.dh_bits = -std::log2(out.optimal_value);
  }
  return out;
}

double dh_zero_closed_form(const DensityMatrix& rho) {
  const HermitianMatrix support = support_projector(rho.hermitian());
  return -std::log2(hs_inner(support, dephase(rho).hermitian()));
}

DistillFidelity distill_fidelity(const DensityMatrix& rho, double m) {
  if (!(m >= 1.0)) throw ValidationError("distillation fidelity needs m >= 1, got " + std::to_string(m));
  const Tolerances& tol = tolerances();
  const HermitianMatrix& r = rho.hermitian();
  const HermitianMatrix delta = dephase(rho).hermitian();
  const double target = 1.0 / m;
  auto dual = [&](double t) { return positive_mass(r - delta * t) + t * target; };

  DistillFidelity out;
  if (m == 1.0) {
    // <X, Delta rho> = 1 forces X = 1 on supp Delta(rho) ⊇ supp rho.
    out.primal = TestOperator(HermitianMatrix::identity(rho.dim()));
    out.value = 1.0;
    out.dual_t = 0.0;
    out.dual_value = dual(0.0);
    out.gap = out.dual_value - out.value;
    return out;
  }

  // f(t) = Tr Delta(rho) P_+(rho - t Delta rho) is non-increasing, equal to 1
  // for t < 0 and 0 once rho <= t Delta(rho), i.e. t > R_Delta + 1.
  auto above = [&](double t) { return positive_weight(r - delta * t, delta) >= target; };
  double t_lo = -1.0;
  double t_hi = r_delta(rho) + 2.0;
  while (t_hi - t_lo > tol.solver_t * std::max(1.0, std::abs(t_hi))) {
    const double mid = 0.5 * (t_lo + t_hi);
    (above(mid) ? t_lo : t_hi) = mid;
  }
  const double t_star = 0.5 * (t_lo + t_hi);
  const HermitianMatrix x = threshold_operator(split(r - delta * t_star), delta, target);
  out.primal = TestOperator(x);
  out.value = std::clamp(hs_inner(x, r), 0.0, 1.0);
  out.dual_t = t_star;
  out.dual_value = dual(t_star);
  out.gap = out.dual_value - out.value;
  return out;
}

}  // namespace cohere

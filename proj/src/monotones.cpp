#include "cohere/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohere/tolerance.hpp"

namespace cohere {

namespace {

// Pseudo-inverse square root of the diagonal of rho, restricted to its support.
RealVector inverse_sqrt_diagonal(const DensityMatrix& rho) {
  const RealVector diag = rho.diagonal_entries();
  const double tau = truncation_threshold(diag);
  RealVector out(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) out(i) = diag(i) > tau ? 1.0 / std::sqrt(diag(i)) : 0.0;
  return out;
}

}  // namespace

double r_delta(const DensityMatrix& rho) {
  const RealVector w = inverse_sqrt_diagonal(rho);
  const Matrix scaled = w.cast<Complex>().asDiagonal() * rho.matrix() * w.cast<Complex>().asDiagonal();
  return std::max(0.0, max_eigenvalue(HermitianMatrix::symmetrized(scaled)) - 1.0);
}

double rel_entropy_coherence(const DensityMatrix& rho) {
  const double d = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);
  return std::max(0.0, d);
}

double renyi_relative(const DensityMatrix& rho, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw ValidationError("Renyi order must lie in [0, 2] for a rho-DIO monotone, got " +
                          std::to_string(alpha));
  }
  if (alpha == 1.0) return rel_entropy_coherence(rho);
  const HermitianMatrix rho_pow = matrix_power(rho.hermitian(), alpha);
  const HermitianMatrix delta_pow = matrix_power(dephase(rho).hermitian(), 1.0 - alpha);
  const double q = hs_inner(rho_pow, delta_pow);
  return std::max(0.0, std::log2(q) / (alpha - 1.0));
}

double renyi_entropy(const ProbVector& p, double gamma) {
  if (!(gamma >= 0.0)) throw ValidationError("Renyi entropy order must be >= 0");
  if (gamma == 1.0) return shannon_entropy(p);
  double sum = 0.0;
  for (double x : p.values()) {
    if (x > 0.0) sum += std::pow(x, gamma);
  }
  return std::log2(sum) / (1.0 - gamma);
}

double c_k_monotone(const PureState& psi, int k) {
  if (k < 1) throw ValidationError("C_k needs k >= 1");
  const std::vector<double> sorted = psi.probabilities().sorted();
  double tail = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k - 1); i < sorted.size(); ++i) tail += sorted[i];
  return tail;
}

double lp_moduli_norm(const PureState& psi, double p) {
  if (!(p >= 0.0)) throw ValidationError("l_p order must be >= 0");
  const ProbVector probs = psi.probabilities();
  if (p == 0.0) {
    return static_cast<double>(
        std::count_if(probs.values().begin(), probs.values().end(),
                      [&](double x) { return x > tolerances().prob_clamp; }));
  }
  double sum = 0.0;
  for (double x : probs.values()) {
    if (x > 0.0) sum += std::pow(x, p);
  }
  return std::pow(sum, 1.0 / p);
}

MonotoneReport monotone_report(const DensityMatrix& rho) {
  MonotoneReport r;
  r.r_delta = r_delta(rho);
  r.rel_entropy_bits = rel_entropy_coherence(rho);
  r.l1 = l1_norm(rho);
  for (double alpha : default_renyi_orders()) r.renyi.emplace_back(alpha, renyi_relative(rho, alpha));
  return r;
}

MonotoneReport monotone_report(const PureState& psi) {
  MonotoneReport r = monotone_report(DensityMatrix::from_pure(psi));
  for (int k = 2; k <= psi.dim(); ++k) r.c_k.emplace_back(k, c_k_monotone(psi, k));
  for (double p : default_lp_orders()) r.lp_moduli.emplace_back(p, lp_moduli_norm(psi, p));
  return r;
}

}  // namespace cohere

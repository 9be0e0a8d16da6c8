#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cohere/states.hpp"

namespace cohere {

// Coherence quantifiers that do not increase under rho-DIO (R_Delta, the
// relative entropy of coherence, Renyi alpha in [0, 2]) plus the pure-state
// quantities C_k and l_p moduli norms. Every field is a necessary condition
// only: no finite subset is known to decide rho-DIO convertibility.
struct MonotoneReport {
  double r_delta = 0.0;
  double rel_entropy_bits = 0.0;
  double l1 = 1.0;
  std::vector<std::pair<double, double>> renyi;      // (alpha, D_alpha)
  std::vector<std::pair<int, double>> c_k;           // pure states only
  std::vector<std::pair<double, double>> lp_moduli;  // pure states only
};

// min { lambda : rho <= (1 + lambda) Delta(rho) }, computed as
// ||Delta^{-1/2} rho Delta^{-1/2}||_inf - 1 on supp Delta(rho).
double r_delta(const DensityMatrix& rho);

// D(rho || Delta(rho)) = S(Delta rho) - S(rho), in bits.
double rel_entropy_coherence(const DensityMatrix& rho);

// D_alpha(rho || Delta rho) = log2 Tr[rho^alpha Delta^{1-alpha}] / (alpha - 1)
// for alpha in [0, 2]; alpha = 1 dispatches to the relative entropy.
double renyi_relative(const DensityMatrix& rho, double alpha);

// log2(sum p^gamma) / (1 - gamma); gamma = 1 is the Shannon entropy.
double renyi_entropy(const ProbVector& p, double gamma);

// Tail sum of the sorted coherence distribution from position k (1-based).
double c_k_monotone(const PureState& psi, int k);

// (sum_x |psi_x|^{2p})^{1/p}; p = 0 returns the support size.
double lp_moduli_norm(const PureState& psi, double p);

inline const std::vector<double>& default_renyi_orders() {
  static const std::vector<double> orders{0.0, 0.5, 1.0, 1.5, 2.0};
  return orders;
}

inline const std::vector<double>& default_lp_orders() {
  static const std::vector<double> orders{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
  return orders;
}

MonotoneReport monotone_report(const DensityMatrix& rho);
MonotoneReport monotone_report(const PureState& psi);

}  // namespace cohere

#pragma once

// Independent reference computations for the test suites. Each one avoids
// the library routine it is used to check.

#include <random>
#include <vector>

#include "cohere/linalg.hpp"
#include "cohere/states.hpp"

namespace cohere::testing {

// Prefix-sum majorization test on plain vectors: p ≺ q.
bool brute_force_majorizes(std::vector<double> q, std::vector<double> p, double slack = 1e-9);

// min { sum m_i s_i : sum m_i r_i >= 1 - eps, 0 <= m_i <= 1 } by the greedy
// fractional-knapsack rule (cheapest s_i / r_i first).
double knapsack_type2(const std::vector<double>& r, const std::vector<double>& s, double eps);

// min Tr M sigma over M = c |v><v| with Tr M rho >= 1 - eps, c <= 1, for
// qubit v on a Bloch-sphere grid of n x 2n points.
double rank_one_grid_type2(const Matrix& rho, const Matrix& sigma, double eps, int n);

// Average of P_pi Q P_pi^T over all d! basis permutations.
Matrix permutation_twirl(const Matrix& q);

// R_Delta by bisection on the smallest eigenvalue of (1 + r) Delta(rho) - rho.
double r_delta_bisection(const Matrix& rho);

// Squared fidelity via the pure/mixed formula <psi|sigma|psi>.
double pure_fidelity(const Vector& psi, const Matrix& sigma);

// Random real Hermitian perturbation with unit Frobenius norm.
Matrix random_hermitian(int dim, std::mt19937_64& rng);

// Random probability vector of length d (Dirichlet(1) by normalized exponentials).
std::vector<double> random_probabilities(int d, std::mt19937_64& rng);

// Pure state with the given probabilities and random phases.
PureState with_phases(const std::vector<double>& p, std::mt19937_64& rng);

}  // namespace cohere::testing

#include "cohere/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "cohere/tolerance.hpp"

namespace cohere {

MajorizationError::MajorizationError(int prefix_index, double excess)
    : ValidationError("majorization fails at prefix k = " + std::to_string(prefix_index) +
                          " (excess " + std::to_string(excess) + ")",
                      excess),
      index_(prefix_index) {}

HeraldedEnsemble::HeraldedEnsemble(std::vector<HeraldedBranch> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("heralded ensemble must have at least one branch");
  double total = 0.0;
  for (const auto& b : branches_) {
    if (!(b.probability >= 0.0)) {
      throw ValidationError("heralded ensemble has a negative probability", -b.probability);
    }
    total += b.probability;
  }
  if (std::abs(total - 1.0) > tolerances().trace) {
    throw ValidationError("heralded ensemble probabilities sum to " + std::to_string(total),
                          std::abs(total - 1.0));
  }
}

namespace {

std::vector<double> sorted_padded(const std::vector<double>& v, std::size_t n) {
  std::vector<double> out(n, 0.0);
  std::copy(v.begin(), v.end(), out.begin());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// 1-based index of the first prefix where sum(p) exceeds sum(q) + slack.
int first_violation(const std::vector<double>& q, const std::vector<double>& p, double* excess) {
  const std::size_t n = std::max(q.size(), p.size());
  const std::vector<double> qs = sorted_padded(q, n);
  const std::vector<double> ps = sorted_padded(p, n);
  const double slack = tolerances().majorization_slack;
  double sq = 0.0;
  double sp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sq += qs[k];
    sp += ps[k];
    if (sp > sq + slack) {
      if (excess) *excess = sp - sq;
      return static_cast<int>(k + 1);
    }
  }
  return 0;
}

// Permutation sorting v non-increasingly, stable in the original index.
std::vector<int> sorting_order(const std::vector<double>& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
  return order;
}

}  // namespace

int first_majorization_violation(const ProbVector& q, const ProbVector& p) {
  return first_violation(q.values(), p.values(), nullptr);
}

bool majorizes(const ProbVector& q, const ProbVector& p) {
  return first_majorization_violation(q, p) == 0;
}

bool dio_pure_decide(const PureState& psi, const PureState& phi) {
  return majorizes(phi.probabilities(), psi.probabilities());
}

bool dio_to_maxcoherent_decide(const PureState& psi, int m) {
  if (m < 1) throw ValidationError("target Psi_m needs m >= 1");
  const ProbVector p = psi.probabilities();
  const double largest = *std::max_element(p.values().begin(), p.values().end());
  return largest <= 1.0 / m + tolerances().majorization_slack;
}

std::vector<double> heralded_target(const HeraldedEnsemble& ensemble) {
  std::size_t n = 0;
  for (const auto& b : ensemble.branches()) n = std::max<std::size_t>(n, b.state.dim());
  std::vector<double> mix(n, 0.0);
  for (const auto& b : ensemble.branches()) {
    const std::vector<double> q = sorted_padded(b.state.probabilities().values(), n);
    for (std::size_t i = 0; i < n; ++i) mix[i] += b.probability * q[i];
  }
  return mix;
}

bool heralded_decide(const PureState& psi, const HeraldedEnsemble& ensemble) {
  return first_violation(heralded_target(ensemble), psi.probabilities().values(), nullptr) == 0;
}

MajorizationWitness build_witness(const ProbVector& q, const ProbVector& p) {
  double excess = 0.0;
  if (const int k = first_violation(q.values(), p.values(), &excess); k != 0) {
    throw MajorizationError(k, excess);
  }
  const std::size_t n = std::max(q.size(), p.size());
  std::vector<double> qv(q.values());
  std::vector<double> pv(p.values());
  qv.resize(n, 0.0);
  pv.resize(n, 0.0);
  const std::vector<int> q_order = sorting_order(qv);
  const std::vector<int> p_order = sorting_order(pv);

  std::vector<double> x(n);  // running image of q, kept sorted
  std::vector<double> y(n);  // target p, sorted
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = qv[q_order[i]];
    y[i] = pv[p_order[i]];
  }

  // Chain of T-transforms x <- T x with T = lambda I + (1 - lambda) (j k).
  // Each step takes the last coordinate j still above its target and the first
  // later coordinate k below its target, and moves delta = min(x_j - y_j,
  // y_k - x_k) from j to k, which resolves at least one of them.
  const double eps = 1e-15;
  RealMatrix chain = RealMatrix::Identity(n, n);
  int factors = 0;
  for (std::size_t guard = 0; guard < n; ++guard) {
    int j = -1;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (x[i] - y[i] > eps) {
        j = i;
        break;
      }
    }
    if (j < 0) break;
    int k = -1;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (y[i] - x[i] > eps) {
        k = static_cast<int>(i);
        break;
      }
    }
    if (k < 0) break;  // remaining mismatch is rounding dust absorbed by the slack
    const double delta = std::min(x[j] - y[j], y[k] - x[k]);
    const double gap = x[j] - x[k];
    const double lambda = 1.0 - delta / gap;
    RealMatrix t = RealMatrix::Identity(n, n);
    t(j, j) = lambda;
    t(k, k) = lambda;
    t(j, k) = 1.0 - lambda;
    t(k, j) = 1.0 - lambda;
    chain = t * chain;
    const double xj = x[j];
    const double xk = x[k];
    x[j] = lambda * xj + (1.0 - lambda) * xk;
    x[k] = (1.0 - lambda) * xj + lambda * xk;
    ++factors;
  }

  // T = P_p^T * chain * P_q, where (P_q q)_i = q_{q_order[i]}.
  RealMatrix transform = RealMatrix::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      transform(p_order[a], q_order[b]) = chain(a, b);
    }
  }
  return MajorizationWitness{std::move(transform), StochasticKind::bistochastic, factors};
}

}  // namespace cohere

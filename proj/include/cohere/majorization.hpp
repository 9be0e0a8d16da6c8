#pragma once

#include <vector>

#include "cohere/states.hpp"

namespace cohere {

enum class StochasticKind { bistochastic, sub_bistochastic };

// Non-negative matrix T with T q = p, certifying p ≺ q.
struct MajorizationWitness {
  RealMatrix transform;
  StochasticKind kind = StochasticKind::bistochastic;
  int factors = 0;  // number of T-transforms composed
};

struct HeraldedBranch {
  double probability;
  PureState state;
};

// Probabilistic target {(eta_j, phi_j)} of a heralded transformation.
class HeraldedEnsemble {
 public:
  explicit HeraldedEnsemble(std::vector<HeraldedBranch> branches);
  const std::vector<HeraldedBranch>& branches() const { return branches_; }

 private:
  std::vector<HeraldedBranch> branches_;
};

class MajorizationError : public ValidationError {
 public:
  MajorizationError(int prefix_index, double excess);
  int prefix_index() const noexcept { return index_; }

 private:
  int index_;
};

// True iff p ≺ q: every prefix sum of sorted p is at most the matching
// prefix sum of sorted q plus the majorization slack. Shorter vectors are
// zero-padded.
bool majorizes(const ProbVector& q, const ProbVector& p);

// Index k (1-based) of the first violated prefix sum, or 0 when p ≺ q.
int first_majorization_violation(const ProbVector& q, const ProbVector& p);

// Deterministic psi -> phi under DIO: Delta(psi) ≺ Delta(phi).
bool dio_pure_decide(const PureState& psi, const PureState& phi);

// psi -> Psi_m under DIO: max_i |psi_i|^2 <= 1/m.
bool dio_to_maxcoherent_decide(const PureState& psi, int m);

// Heralded psi -> sum_j eta_j phi_j ⊗ |j><j|: p ≺ sum_j eta_j q_j (each q_j
// sorted before mixing).
bool heralded_decide(const PureState& psi, const HeraldedEnsemble& ensemble);

// Sorted mixture sum_j eta_j q_j^↓, padded to the longest branch.
std::vector<double> heralded_target(const HeraldedEnsemble& ensemble);

// Bistochastic T with T q = p, built from at most d-1 T-transforms acting on
// the sorted vectors and conjugated by the sorting permutations. Throws
// MajorizationError naming the failing prefix when p ⊀ q.
MajorizationWitness build_witness(const ProbVector& q, const ProbVector& p);

}  // namespace cohere

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "cohere/neyman_pearson.hpp"
#include "cohere/states.hpp"

namespace cohere {

// CPTP map stored by its unnormalized Choi operator
//   J = sum_{x1,x2} |x1><x2| ⊗ E(|x1><x2|)
// (input factor first, row index x * dout + y), optionally with Kraus
// operators (dout x din). Factories validate complete positivity, trace
// preservation, and Kraus/Choi consistency.
class QuantumChannel {
 public:
  static QuantumChannel from_kraus(std::vector<Matrix> kraus);
  static QuantumChannel from_choi(int input_dim, int output_dim, const Matrix& choi);
  // Builds from the images E(|x1><x2|), indexed blocks[x1 * din + x2].
  static QuantumChannel from_blocks(int input_dim, int output_dim, const std::vector<Matrix>& blocks);

  int input_dim() const { return din_; }
  int output_dim() const { return dout_; }
  const HermitianMatrix& choi() const { return choi_; }
  const std::optional<std::vector<Matrix>>& kraus() const { return kraus_; }

  // E(|x1><x2|).
  Matrix block(int x1, int x2) const;
  // Linear action on an arbitrary din x din operator.
  Matrix apply_matrix(const Matrix& q) const;

 private:
  QuantumChannel(int din, int dout, HermitianMatrix choi, std::optional<std::vector<Matrix>> kraus);

  int din_ = 0;
  int dout_ = 0;
  HermitianMatrix choi_;
  std::optional<std::vector<Matrix>> kraus_;
};

// Column-stochastic S_{y|x} = <K(y,x), K(y,x)>.
struct StochasticMatrixS {
  RealMatrix s;  // dout x din
};

struct KrausDioDiagnostics {
  StochasticMatrixS s;
  double condition1 = 0.0;  // max |<K(y,x), K(y1,x)>|, y != y1
  double condition2 = 0.0;  // max |<K(y,x), K(y,x1)>|, x != x1
  double condition3 = 0.0;  // max |sum_y S_{y|x} - 1|
};

struct MembershipCheck {
  bool holds = false;
  double violation = 0.0;  // Frobenius norm of the commutator
  double kraus_violation = std::numeric_limits<double>::quiet_NaN();  // DIO via Kraus conditions
};

struct CptpCheck {
  bool holds = false;
  double psd_violation = 0.0;    // -min eigenvalue of the Choi operator, floored at 0
  double trace_violation = 0.0;  // max |Tr_out J - 1|
};

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho);

CptpCheck check_cptp(int input_dim, int output_dim, const Matrix& choi);

MembershipCheck is_dio(const QuantumChannel& channel);
MembershipCheck is_rho_dio(const QuantumChannel& channel, const DensityMatrix& rho);

KrausDioDiagnostics kraus_dio_conditions(const std::vector<Matrix>& kraus);

std::vector<Matrix> kraus_from_choi(const QuantumChannel& channel);
Matrix choi_from_kraus(const std::vector<Matrix>& kraus);

QuantumChannel identity_channel(int dim);
QuantumChannel dephasing_channel(int dim);
QuantumChannel unitary_channel(const Matrix& u);

// Uniform mixture of basis permutations, via its closed-form sector action.
QuantumChannel twirl_channel(int dim);

// Q -> <X, Q> Psi_m + <1 - X, Q> (1 - Psi_m)/(m - 1), requiring
// <X, Delta(rho)> = 1/m. Output dimension m.
QuantumChannel construct_distill(const DensityMatrix& rho, int m, const TestOperator& x);

// Q -> <Psi_m, Q> omega + <1 - Psi_m, Q> (m Delta(omega) - omega)/(m - 1),
// requiring R_Delta(omega) <= m - 1. Input dimension m.
QuantumChannel construct_dilute(int m, const DensityMatrix& omega);

// X -> <Pi_rho, X> omega + <1 - Pi_rho, X> sigma with
// sigma = (lambda Delta(omega) - omega)/(lambda - 1), lambda = 1/Tr(Pi_rho Delta rho),
// requiring R_Delta(omega) + 1 <= lambda.
QuantumChannel construct_prop5(const DensityMatrix& rho, const DensityMatrix& omega);

// Qubit convertibility under (rho-)DIO: R_Delta and the l1 norm both
// non-increasing.
bool qubit_decide(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace cohere

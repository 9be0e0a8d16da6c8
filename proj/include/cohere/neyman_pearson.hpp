#pragma once

#include "cohere/states.hpp"

namespace cohere {

// Hermitian M with 0 <= M <= 1.
class TestOperator {
 public:
  TestOperator() = default;
  explicit TestOperator(const HermitianMatrix& m);

  const HermitianMatrix& hermitian() const { return m_; }
  const Matrix& matrix() const { return m_.matrix(); }
  int dim() const { return m_.dim(); }

 private:
  HermitianMatrix m_;
};

// Solution of min { Tr M sigma : Tr M rho >= 1 - eps, 0 <= M <= 1 } with a
// dual certificate g(t) = t (1 - eps) - Tr (t rho - sigma)_+.
struct NPResult {
  double optimal_value = 0.0;  // Tr M sigma of the returned primal
  double dh_bits = 0.0;        // -log2(optimal_value); +inf when `infinite`
  bool infinite = false;       // optimal value <= 1e-12
  TestOperator primal;
  double dual_t = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;            // optimal_value - dual_value
};

// Hypothesis-testing relative entropy D_H^eps(rho || sigma) in bits, with
// certificates. eps must lie in [0, 1).
NPResult dh_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma, double eps);

// -log2 Tr(Pi_rho Delta(rho)), the un-floored zero-error value.
double dh_zero_closed_form(const DensityMatrix& rho);

// Solution of max { <X, rho> : 0 <= X <= 1, <X, Delta(rho)> = 1/m } with the
// dual min_t Tr (rho - t Delta(rho))_+ + t/m.
struct DistillFidelity {
  double value = 0.0;
  TestOperator primal;
  double dual_t = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // dual_value - value
};

// Fidelity of distillation to Psi_m under rho-DIO (m >= 1 real).
DistillFidelity distill_fidelity(const DensityMatrix& rho, double m);

}  // namespace cohere

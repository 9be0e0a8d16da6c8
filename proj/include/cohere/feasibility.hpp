#pragma once

#include <optional>
#include <string>

#include "cohere/channels.hpp"

namespace cohere {

enum class FeasibilityStatus { kFeasible, kInfeasibleCertified, kUndetermined };

std::string to_string(FeasibilityStatus s);

// A rho-DIO monotone that would have to increase from rho to sigma.
struct MonotoneCertificate {
  std::string monotone;
  double value_in = 0.0;
  double value_out = 0.0;
};

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::kUndetermined;
  std::optional<QuantumChannel> witness;
  std::optional<MonotoneCertificate> certificate;
  double residual = 0.0;  // affine residual of the last PSD iterate
  int iterations = 0;
};

struct FeasibilityOptions {
  int max_iters = 5000;
  double residual_tol = 1e-7;
  double certificate_margin = 1e-7;
  double relaxation = 1.9;  // in (0, 2); 1 is plain alternating projection
};

// Decides whether some rho-DIO channel maps rho to sigma. Over-relaxed
// alternating projections between the PSD cone and the affine set
// {J : Tr_out J = 1, J(rho) = sigma, J(Delta rho) = Delta sigma} of Choi
// operators, restricted to the face forced by the kernels of sigma and
// Delta sigma; when they stall, monotone certificates are tried. Intended for small dimensions (din * dout <= 36).
FeasibilityVerdict rho_dio_feasible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    const FeasibilityOptions& options);
inline FeasibilityVerdict rho_dio_feasible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           int max_iters = 5000) {
  FeasibilityOptions o;
  o.max_iters = max_iters;
  return rho_dio_feasible(rho, sigma, o);
}

// First monotone that strictly increases by more than `margin`, if any.
std::optional<MonotoneCertificate> find_monotone_certificate(const DensityMatrix& rho,
                                                             const DensityMatrix& sigma,
                                                             double margin);

}  // namespace cohere

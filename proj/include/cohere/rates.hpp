#pragma once

#include <limits>
#include <string>
#include <utility>

#include "cohere/states.hpp"

namespace cohere {

enum class Regime { one_shot, zero_error, asymptotic };

std::string to_string(Regime r);

struct RateReport {
  double bits = 0.0;       // log2 of an integer for one-shot / zero-error regimes
  double raw_value = 0.0;  // value before rounding, in bits
  long long units = 0;     // the integer m behind `bits` (0 for asymptotic)
  double eps = 0.0;
  Regime regime = Regime::asymptotic;
  // Optional certificates (NaN when not applicable).
  double duality_gap = std::numeric_limits<double>::quiet_NaN();
  double cross_check = std::numeric_limits<double>::quiet_NaN();
};

// floor(2^raw) and ceil(2^raw) with the integer snap: values within
// rounding_guard * max(1, x) of an integer are treated as that integer.
long long guarded_floor_pow2(double raw_bits);
long long guarded_ceil_pow2(double raw_bits);
long long guarded_ceil(double x);

// One-shot eps-error distillable coherence under rho-DIO. `cross_check`
// holds the distillation fidelity reached at m = units (>= 1 - eps).
RateReport distill_one_shot(const DensityMatrix& rho, double eps);
RateReport distill_zero_error(const DensityMatrix& rho);
RateReport distill_asymptotic(const DensityMatrix& rho);
RateReport distill_zero_error_asymptotic(const DensityMatrix& rho);

// Zero-error cost log2 ceil(R_Delta + 1), equal under DIO and Psi_m-DIO.
RateReport dilute_zero_error(const DensityMatrix& rho);
RateReport dilute_asymptotic(const DensityMatrix& rho);
RateReport dilute_zero_error_asymptotic(const DensityMatrix& rho);

// Certified bracket around the eps-error one-shot cost
// log2 ceil(min { R_Delta(omega) + 1 : F(rho, omega) >= 1 - eps }).
struct DilutionBracket {
  RateReport lower;
  RateReport upper;
  double upper_mixing = 0.0;  // t of the accepted omega_t = (1-t) rho + t Delta(rho)
  double width_bits() const { return upper.bits - lower.bits; }
};

DilutionBracket dilute_one_shot_bounds(const DensityMatrix& rho, double eps);

// Smallest value of R_Delta(omega) + 1 compatible with F(rho, omega) >= 1 - eps
// certified by one test operator M: with a = Tr M rho and c = Tr M Delta(rho),
// any such omega has Tr M omega >= cos^2(min(acos sqrt a + theta, pi/2)) and
// Tr M Delta(omega) <= cos^2(max(acos sqrt c - theta, 0)), theta = acos sqrt(1-eps).
double dilution_lower_bound_from_test(double a, double c, double eps);

// Maximal asymptotic rate D(rho||Delta rho) / D(sigma||Delta sigma).
struct AsymptoticRate {
  double value = 0.0;
  bool unbounded = false;  // sigma incoherent
};

AsymptoticRate asymptotic_rate(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace cohere

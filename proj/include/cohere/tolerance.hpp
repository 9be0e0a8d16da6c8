#pragma once

#include <string>

namespace cohere {

// Numerical tolerance profile shared by every module.
//
// The active profile is process-wide and read-only during computation.
// Front ends may install a different profile once at startup (see
// `install_tolerances`), typically from the COHERE_TOL environment variable.
struct Tolerances {
  double hermiticity = 1e-10;          // absolute max-entry asymmetry
  double rank_relative = 1e-9;         // eigen truncation, relative to max(1, |lambda|_max)
  double psd = 1e-9;                   // allowed negative eigenvalue
  double trace = 1e-9;                 // unit-trace / unit-norm slack
  double prob_clamp = 1e-12;           // negative dust clamped to zero
  double majorization_slack = 1e-9;    // prefix-sum comparison slack
  double incoherence = 1e-9;           // Frobenius distance to the dephased state
  double channel = 1e-8;               // DIO / rho-DIO commutation checks
  double cptp = 1e-9;                  // Choi positivity and trace preservation
  double rounding_guard = 1e-7;        // integer snap before floor/ceil
  double solver_t = 1e-10;             // relative bracket width of 1-D dual searches
  double duality_gap = 1e-6;           // certificate acceptance

  // Every field multiplied by `factor`.
  Tolerances scaled(double factor) const;
};

const Tolerances& tolerances();

// Replaces the active profile. Not synchronized: call before any
// concurrent use of the library.
void install_tolerances(const Tolerances& profile);

// Parses a COHERE_TOL value: "default", "strict" (x0.1), "loose" (x10), or
// a positive multiplier such as "2.5". Throws std::invalid_argument.
Tolerances parse_tolerance_profile(const std::string& spec);

}  // namespace cohere

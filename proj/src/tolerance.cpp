#include "cohere/tolerance.hpp"

#include <cmath>
#include <stdexcept>

namespace cohere {

namespace {
Tolerances& active_profile() {
  static Tolerances profile;
  return profile;
}
}  // namespace

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  for (double* field : {&t.hermiticity, &t.rank_relative, &t.psd, &t.trace, &t.prob_clamp,
                        &t.majorization_slack, &t.incoherence, &t.channel, &t.cptp,
                        &t.rounding_guard, &t.solver_t, &t.duality_gap}) {
    *field *= factor;
  }
  return t;
}

const Tolerances& tolerances() { return active_profile(); }

void install_tolerances(const Tolerances& profile) { active_profile() = profile; }

Tolerances parse_tolerance_profile(const std::string& spec) {
  if (spec.empty() || spec == "default") return Tolerances{};
  if (spec == "strict") return Tolerances{}.scaled(0.1);
  if (spec == "loose") return Tolerances{}.scaled(10.0);
  std::size_t used = 0;
  double factor = 0.0;
  try {
    factor = std::stod(spec, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("unrecognized tolerance profile '" + spec + "'");
  }
  if (used != spec.size() || !std::isfinite(factor) || factor <= 0.0) {
    throw std::invalid_argument("tolerance multiplier must be a positive number, got '" + spec + "'");
  }
  return Tolerances{}.scaled(factor);
}

}  // namespace cohere

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cohere/channels.hpp"
#include "cohere/feasibility.hpp"
#include "cohere/majorization.hpp"
#include "cohere/monotones.hpp"
#include "cohere/neyman_pearson.hpp"
#include "cohere/rates.hpp"
#include "support/oracles.hpp"

using namespace cohere;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double distance(const DensityMatrix& a, const DensityMatrix& b) { return (a.matrix() - b.matrix()).norm(); }

DensityMatrix psi(int m) { return DensityMatrix::from_pure(max_coherent(m)); }

PureState separation_pure() {
  Vector a(3);
  a << std::sqrt(5.0 / 8), std::sqrt(3.0 / 16), std::sqrt(3.0 / 16);
  return PureState(a);
}

double pow2_bits(double x) { return std::log2(static_cast<double>(guarded_ceil(x))); }

Outcome separation_example() {
  const auto t0 = Clock::now();
  Outcome o;
  const PureState p = separation_pure();
  const DensityMatrix rho = DensityMatrix::from_pure(p);
  const ProbVector probs = p.probabilities();
  double sum_sq = 0;
  for (double v : probs.values()) sum_sq += v * v;
  const double zero_error = distill_zero_error(rho).bits;
  const bool pure_dio = dio_to_maxcoherent_decide(p, 2);
  const FeasibilityVerdict v = rho_dio_feasible(rho, psi(2));
  bool witness_ok = false;
  if (v.status == FeasibilityStatus::kFeasible && v.witness) {
    witness_ok = check_cptp(3, 2, v.witness->choi().matrix()).holds && is_rho_dio(*v.witness, rho).holds &&
                 distance(apply(*v.witness, rho), psi(2)) <= 1e-6;
  }
  const QuantumChannel c = construct_prop5(rho, psi(2));
  const double out_err = distance(apply(c, rho), psi(2));
  const double dio_err = is_rho_dio(c, rho).violation;
  const double elapsed = seconds_since(t0);
  o.pass = std::abs(sum_sq - 59.0 / 128) <= 1e-12 && std::abs(zero_error - 1.0) <= 1e-12 && !pure_dio &&
           witness_ok && out_err <= 1e-7 && dio_err <= 1e-8 && elapsed < 1.0;
  o.detail = fmt("sum p^2 err %.1e, output err %.1e, %.3f s", std::abs(sum_sq - 59.0 / 128), out_err, elapsed);
  if (!witness_ok) o.detail += ", oracle witness missing";
  if (pure_dio) o.detail += ", pure DIO decision wrong";
  return o;
}

Outcome monotone_values() {
  const double a = c_k_monotone(separation_pure(), 2);
  const double b = c_k_monotone(max_coherent(2), 2);
  Outcome o;
  o.pass = std::abs(a - 0.375) <= 1e-12 && std::abs(b - 0.5) <= 1e-12;
  o.detail = fmt("C_2 = %.15g -> %.15g", a, b);
  return o;
}

Outcome closed_form_vs_solver() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0, worst_gap = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + i % 4;
    const DensityMatrix rho = random_density(d, 1 + (i / 4) % d, rng);
    const NPResult r = dh_epsilon(rho, dephase(rho), 0.0);
    worst = std::max(worst, std::abs(r.dh_bits - dh_zero_closed_form(rho)));
    worst_gap = std::max(worst_gap, std::abs(r.gap));
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-6 && worst_gap <= 1e-6 && elapsed < 30.0;
  o.detail = fmt("max diff %.1e, max gap %.1e, %.2f s", worst, worst_gap, elapsed);
  return o;
}

Outcome tensor_additivity() {
  std::mt19937_64 rng(1002);
  double worst_add = 0, worst_mul = 0;
  for (int i = 0; i < 50; ++i) {
    const int da = 2 + i % 2, db = 2 + (i / 2) % 2;
    const DensityMatrix a = random_density(da, 1 + i % da, rng);
    const DensityMatrix b = random_density(db, 1 + (i / 3) % db, rng);
    const DensityMatrix ab = kron(a, b);
    const double sum = dh_zero_closed_form(a) + dh_zero_closed_form(b);
    worst_add = std::max(worst_add, std::abs(dh_zero_closed_form(ab) - sum) / std::max(1.0, std::abs(sum)));
    const double prod = (r_delta(a) + 1) * (r_delta(b) + 1);
    worst_mul = std::max(worst_mul, std::abs(r_delta(ab) + 1 - prod) / prod);
  }
  Outcome o;
  o.pass = worst_add <= 1e-7 && worst_mul <= 1e-7;
  o.detail = fmt("additivity %.1e, multiplicativity %.1e", worst_add, worst_mul);
  return o;
}

// Pairs where psi is a bistochastic image of phi half of the time, so both
// answers are exercised.
Outcome pure_majorization() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int positives = 0, disagreements = 0, bad_witnesses = 0;
  double worst_residual = 0;
  for (int i = 0; i < 500; ++i) {
    const int d = 2 + i % 5;
    std::vector<double> q = testing::random_probabilities(d, rng);
    if (i % 7 == 0) q[0] = 0;
    double total = 0;
    for (double v : q) total += v;
    for (double& v : q) v /= total;
    std::vector<double> p;
    if (i % 2 == 0) {
      p.assign(d, 0.0);
      std::vector<int> perm(d);
      for (int k = 0; k < d; ++k) perm[k] = k;
      for (int term = 0; term < 3; ++term) {
        std::shuffle(perm.begin(), perm.end(), rng);
        const double w = unif(rng);
        for (int k = 0; k < d; ++k) p[perm[k]] += w * q[k];
      }
      total = 0;
      for (double v : p) total += v;
      for (double& v : p) v /= total;
    } else {
      p = testing::random_probabilities(d, rng);
    }
    const PureState phi = testing::with_phases(q, rng);
    const PureState ps = testing::with_phases(p, rng);
    const std::vector<double> qs = phi.probabilities().values(), pv = ps.probabilities().values();
    const bool decided = dio_pure_decide(ps, phi);
    if (decided != testing::brute_force_majorizes(qs, pv)) ++disagreements;
    if (!decided) continue;
    ++positives;
    const MajorizationWitness w = build_witness(phi.probabilities(), ps.probabilities());
    const RealMatrix& t = w.transform;
    bool ok = w.kind == StochasticKind::bistochastic && t.rows() == d && t.cols() == d && t.minCoeff() >= -1e-12;
    for (int k = 0; ok && k < d; ++k)
      ok = std::abs(t.row(k).sum() - 1) <= 1e-9 && std::abs(t.col(k).sum() - 1) <= 1e-9;
    if (ok) {
      RealVector qv(d), pvv(d);
      for (int k = 0; k < d; ++k) qv(k) = qs[k], pvv(k) = pv[k];
      const double res = (t * qv - pvv).cwiseAbs().maxCoeff();
      worst_residual = std::max(worst_residual, res);
      ok = res <= 1e-9;
    }
    bad_witnesses += !ok;
  }
  Outcome o;
  o.pass = disagreements == 0 && bad_witnesses == 0 && positives > 0;
  o.detail = fmt("%.0f disagreements, %.0f positives, witness residual %.1e", disagreements, positives, worst_residual);
  if (bad_witnesses) o.detail += ", invalid witnesses";
  return o;
}

Outcome catalysis() {
  std::mt19937_64 rng(1004);
  int disagreements = 0, positives = 0;
  for (int i = 0; i < 200; ++i) {
    const int da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const int m = 2 + (i / 9) % 3;
    std::vector<double> a = testing::random_probabilities(da, rng);
    if (i % 4 == 0) {
      // flatten toward uniform so the answer is sometimes yes
      for (double& v : a) v = 0.8 / da + 0.2 * v;
    }
    const PureState ps = testing::with_phases(a, rng);
    const PureState cat = random_pure_state(db, rng);
    const PureState target = max_coherent(m);
    const int dim = std::max(da, m);
    const bool base = dio_pure_decide(ps.padded(dim), target.padded(dim));
    const bool with_cat = dio_pure_decide(kron(ps.padded(dim), cat), kron(target.padded(dim), cat));
    disagreements += base != with_cat;
    positives += base;
  }
  Outcome o;
  o.pass = disagreements == 0;
  o.detail = fmt("%.0f disagreements, %.0f convertible triples", disagreements, positives);
  return o;
}

Outcome qubit_equivalence() {
  std::mt19937_64 rng(1005);
  int determined = 0, disagreements = 0;
  const int n = 300;
  for (int i = 0; i < n; ++i) {
    const DensityMatrix rho = random_density(2, 1 + i % 2, rng);
    const DensityMatrix sigma = random_density(2, 1 + (i / 2) % 2, rng);
    const FeasibilityVerdict v = rho_dio_feasible(rho, sigma, 5000);
    if (v.status == FeasibilityStatus::kUndetermined) continue;
    ++determined;
    disagreements += (v.status == FeasibilityStatus::kFeasible) != qubit_decide(rho, sigma);
  }
  const double rate = static_cast<double>(determined) / n;
  Outcome o;
  o.pass = disagreements == 0 && rate >= 0.95;
  o.detail = fmt("determinacy %.3f, %.0f disagreements", rate, disagreements);
  return o;
}

Outcome channel_constructions() {
  std::mt19937_64 rng(1006);
  double worst_fid = 0, worst_dio = 0, worst_cptp = 0, worst_dilute = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 4;
    const DensityMatrix rho = random_density(d, 1 + (i / 4) % d, rng);
    const int m = 2 + (i / 2) % 3;
    const DistillFidelity f = distill_fidelity(rho, m);
    const QuantumChannel c = construct_distill(rho, m, f.primal);
    const CptpCheck cp = check_cptp(d, m, c.choi().matrix());
    worst_cptp = std::max({worst_cptp, cp.psd_violation, cp.trace_violation});
    worst_dio = std::max(worst_dio, is_rho_dio(c, rho).violation);
    worst_fid = std::max(worst_fid, std::abs(fidelity(apply(c, rho), psi(m)) - f.value));

    const DensityMatrix omega = random_density(2 + i % 3, 1 + i % 2, rng);
    const int k = static_cast<int>(std::max<long long>(2, guarded_ceil(r_delta(omega) + 1))) + i % 2;
    const QuantumChannel dc = construct_dilute(k, omega);
    const CptpCheck dcp = check_cptp(k, omega.dim(), dc.choi().matrix());
    worst_cptp = std::max({worst_cptp, dcp.psd_violation, dcp.trace_violation});
    worst_dio = std::max(worst_dio, is_rho_dio(dc, psi(k)).violation);
    worst_dilute = std::max(worst_dilute, distance(apply(dc, psi(k)), omega));
  }
  Outcome o;
  o.pass = worst_fid <= 1e-7 && worst_dio <= 1e-8 && worst_cptp <= 1e-8 && worst_dilute <= 1e-8;
  o.detail = fmt("fidelity %.1e, rho-DIO %.1e, dilution output %.1e", worst_fid, worst_dio, worst_dilute);
  return o;
}

// Smallest log2 ceil(R_Delta(omega) + 1) over random omega near rho with
// F(rho, omega) >= 1 - eps.
double sampled_dilution_cost(const DensityMatrix& rho, double eps, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = r_delta(rho) + 1;
  const int d = rho.dim();
  for (int s = 0; s < 600; ++s) {
    const int rank = 1 + s % d;
    const double scale = 0.05 + 0.5 * (s % 7) / 6.0;
    Matrix g = Matrix::Zero(d, rank);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = {normal(rng), normal(rng)};
    const Matrix noise = g * g.adjoint();
    const double t = (s % 11) / 10.0;
    Matrix w = rho.matrix() * (1 - t) + dephase(rho).matrix() * t + scale * noise / noise.trace().real();
    w /= w.trace().real();
    const DensityMatrix omega(w);
    if (fidelity(rho, omega) < 1 - eps) continue;
    best = std::min(best, r_delta(omega) + 1);
  }
  return pow2_bits(best);
}

Outcome dilution_bracket() {
  std::mt19937_64 rng(1007);
  int order = 0, zero = 0, oracle = 0, sampled = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 3;
    const DensityMatrix rho = random_density(d, 1 + (i / 3) % d, rng);
    for (double eps : {0.0, 0.05, 0.1}) {
      const DilutionBracket b = dilute_one_shot_bounds(rho, eps);
      order += b.lower.bits > b.upper.bits + 1e-12;
      if (eps == 0.0) {
        const double exact = pow2_bits(r_delta(rho) + 1);
        zero += std::abs(b.lower.bits - exact) > 1e-12 || std::abs(b.upper.bits - exact) > 1e-12;
      }
      if (d == 3 && eps > 0 && i % 2 == 0) {
        ++sampled;
        oracle += b.lower.bits > sampled_dilution_cost(rho, eps, rng) + 1e-12;
      }
    }
  }
  Outcome o;
  o.pass = order == 0 && zero == 0 && oracle == 0;
  o.detail = fmt("%.0f order, %.0f zero-error, %.0f oracle failures", order, zero, oracle);
  o.detail += ", " + std::to_string(sampled) + " sampled cases";
  return o;
}

Outcome asymptotic_consistency() {
  std::mt19937_64 rng(1008);
  double worst_product = 0, worst_rev = 0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(2 + i % 4, 1 + i % 3 % (2 + i % 4), rng);
    const DensityMatrix sigma = random_density(2 + (i / 4) % 4, 1 + (i / 2) % 2, rng);
    const AsymptoticRate ab = asymptotic_rate(rho, sigma), ba = asymptotic_rate(sigma, rho);
    if (!ab.unbounded && !ba.unbounded && ab.value > 0 && ba.value > 0)
      worst_product = std::max(worst_product, std::abs(ab.value * ba.value - 1));
    worst_rev = std::max(worst_rev, std::abs(distill_asymptotic(rho).bits - dilute_asymptotic(rho).bits));
  }
  Outcome o;
  o.pass = worst_product <= 1e-9 && worst_rev == 0.0;
  o.detail = fmt("product err %.1e, distill/dilute gap %.1e", worst_product, worst_rev);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"separation example", separation_example},
      {"monotone values", monotone_values},
      {"closed form vs solver", closed_form_vs_solver},
      {"tensor additivity", tensor_additivity},
      {"pure-state majorization", pure_majorization},
      {"catalysis", catalysis},
      {"qubit equivalence", qubit_equivalence},
      {"channel constructions", channel_constructions},
      {"dilution bracket", dilution_bracket},
      {"asymptotic consistency", asymptotic_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

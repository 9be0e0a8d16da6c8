#include "cohere/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "cohere/feasibility.hpp"
#include "cohere/monotones.hpp"
#include "cohere/neyman_pearson.hpp"
#include "cohere/tolerance.hpp"

namespace cohere::cli {

namespace fs = std::filesystem;

namespace {

struct LoadedFile {
  std::string path;
  std::string bytes;
  Json json;
};

LoadedFile load(const std::string& path) {
  LoadedFile f{path, read_file(path), {}};
  f.json = parse_json_text(f.bytes, path);
  return f;
}

Json input_entry(const LoadedFile& f) { return Json{{"path", f.path}, {"sha256", sha256_hex(f.bytes)}}; }

// Order key as text so that report keys stay stable ("0.5", "1", ...).
std::string key_of(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json base_report(const std::string& command, const RunOptions& options) {
  return Json{{"command", command},
              {"inputs", Json::array()},
              {"seed", options.seed},
              {"tolerances", tolerances_json()}};
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  void stamp(Json& report, const RunOptions& options) const {
    if (!options.timing) return;
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::string> expand(const std::string& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
    return fs::path(a).filename() < fs::path(b).filename();
  });
  if (files.empty()) throw ValidationError("directory " + path + " contains no .json files");
  return files;
}

// Runs `per_file` over one file or a directory; directory mode collects
// per-file results (and errors) under "batch".
template <typename Fn>
CommandOutcome run_states(const std::string& command, const std::string& path, const RunOptions& options,
                          Fn per_file) {
  const Timer timer;
  CommandOutcome out{base_report(command, options), kAffirmative};
  if (!fs::is_directory(path)) {
    const LoadedFile f = load(path);
    out.report["inputs"].push_back(input_entry(f));
    out.report["results"] = per_file(parse_state(f.json));
    timer.stamp(out.report, options);
    return out;
  }
  Json batch = Json::array();
  for (const std::string& file : expand(path)) {
    Json item{{"path", file}};
    try {
      const LoadedFile f = load(file);
      out.report["inputs"].push_back(input_entry(f));
      item["results"] = per_file(parse_state(f.json));
    } catch (const std::exception& e) {
      item["error"] = e.what();
      out.exit_code = kInputError;
    }
    batch.push_back(std::move(item));
  }
  out.report["batch"] = std::move(batch);
  timer.stamp(out.report, options);
  return out;
}

Json pairs_json(const std::vector<std::pair<double, double>>& pairs) {
  Json out = Json::object();
  for (const auto& [k, v] : pairs) out[key_of(k)] = number(v);
  return out;
}

Json monotone_json(const MonotoneReport& r) {
  Json out{{"r_delta", r.r_delta},
           {"rel_entropy_bits", r.rel_entropy_bits},
           {"l1", r.l1},
           {"renyi_relative_bits", pairs_json(r.renyi)}};
  if (!r.c_k.empty()) {
    Json ck = Json::object();
    for (const auto& [k, v] : r.c_k) ck[std::to_string(k)] = v;
    out["c_k"] = std::move(ck);
  }
  if (!r.lp_moduli.empty()) out["lp_moduli"] = pairs_json(r.lp_moduli);
  return out;
}

Json rate_json(const RateReport& r) {
  Json out{{"bits", number(r.bits)},
           {"raw_bits", number(r.raw_value)},
           {"eps", r.eps},
           {"regime", to_string(r.regime)},
           {"duality_gap", number(r.duality_gap)},
           {"cross_check", number(r.cross_check)}};
  if (r.regime != Regime::asymptotic) out["units"] = r.units;
  return out;
}

Json matrix_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json cptp_json(const QuantumChannel& c) {
  const CptpCheck check = check_cptp(c.input_dim(), c.output_dim(), c.choi().matrix());
  return Json{{"holds", check.holds},
              {"psd_violation", check.psd_violation},
              {"trace_violation", check.trace_violation}};
}

Json membership_json(const MembershipCheck& m) {
  Json out{{"holds", m.holds}, {"violation", m.violation}};
  if (!std::isnan(m.kraus_violation)) out["kraus_violation"] = m.kraus_violation;
  return out;
}

void write_channel(const QuantumChannel& c, const std::string& path, Json& report) {
  if (path.empty()) {
    report["channel"] = to_json(c);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render(to_json(c));
  report["channel_path"] = path;
}

}  // namespace

Regime parse_regime(const std::string& name) {
  if (name == "one-shot") return Regime::one_shot;
  if (name == "zero") return Regime::zero_error;
  if (name == "asymptotic") return Regime::asymptotic;
  throw ValidationError("regime must be one-shot, zero or asymptotic");
}

Json tolerances_json() {
  const Tolerances& t = tolerances();
  return Json{{"hermiticity", t.hermiticity},
              {"rank_relative", t.rank_relative},
              {"psd", t.psd},
              {"trace", t.trace},
              {"prob_clamp", t.prob_clamp},
              {"majorization_slack", t.majorization_slack},
              {"incoherence", t.incoherence},
              {"channel", t.channel},
              {"cptp", t.cptp},
              {"rounding_guard", t.rounding_guard},
              {"solver_t", t.solver_t},
              {"duality_gap", t.duality_gap}};
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

CommandOutcome cmd_monotones(const std::string& state_path, const RunOptions& options) {
  return run_states("monotones", state_path, options, [](const StateInput& s) {
    Json out = monotone_json(s.is_pure() ? monotone_report(s.pure()) : monotone_report(s.density()));
    out["dim"] = s.density().dim();
    out["pure"] = s.is_pure();
    return out;
  });
}

CommandOutcome cmd_distill(const std::string& state_path, double eps, Regime regime, const RunOptions& options) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("--eps must lie in [0, 1)");
  return run_states("distill", state_path, options, [&](const StateInput& s) {
    const DensityMatrix rho = s.density();
    switch (regime) {
      case Regime::one_shot:
        return rate_json(distill_one_shot(rho, eps));
      case Regime::zero_error:
        return rate_json(distill_zero_error(rho));
      case Regime::asymptotic:
        break;
    }
    return rate_json(distill_asymptotic(rho));
  });
}

CommandOutcome cmd_dilute(const std::string& state_path, double eps, Regime regime, const RunOptions& options) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("--eps must lie in [0, 1)");
  return run_states("dilute", state_path, options, [&](const StateInput& s) {
    const DensityMatrix rho = s.density();
    switch (regime) {
      case Regime::one_shot: {
        const DilutionBracket b = dilute_one_shot_bounds(rho, eps);
        return Json{{"lower", rate_json(b.lower)},
                    {"upper", rate_json(b.upper)},
                    {"upper_mixing", b.upper_mixing},
                    {"width_bits", b.width_bits()}};
      }
      case Regime::zero_error:
        return rate_json(dilute_zero_error(rho));
      case Regime::asymptotic:
        break;
    }
    return rate_json(dilute_asymptotic(rho));
  });
}

CommandOutcome cmd_decide(const DecideRequest& request, const RunOptions& options) {
  const Timer timer;
  CommandOutcome out{base_report("decide", options), kAffirmative};
  Json& inputs = out.report["inputs"];
  const LoadedFile source = load(request.source);
  inputs.push_back(input_entry(source));
  const StateInput s = parse_state(source.json);
  Json results;
  bool verdict = false;

  switch (request.mode) {
    case DecideMode::pure_pair: {
      const LoadedFile target = load(request.target);
      inputs.push_back(input_entry(target));
      const StateInput t = parse_state(target.json);
      if (!s.is_pure() || !t.is_pure()) throw ValidationError("pure-state decision needs two pure states");
      verdict = dio_pure_decide(s.pure(), t.pure());
      results["mode"] = "pure";
      if (verdict) {
        const MajorizationWitness w = build_witness(t.pure().probabilities(), s.pure().probabilities());
        results["witness"] = Json{{"transform", matrix_json(w.transform)},
                                  {"bistochastic", w.kind == StochasticKind::bistochastic}};
      } else {
        results["first_violation"] = first_majorization_violation(t.pure().probabilities(),
                                                                  s.pure().probabilities());
      }
      break;
    }
    case DecideMode::max_coherent: {
      if (!s.is_pure()) throw ValidationError("max-coherent decision needs a pure state");
      verdict = dio_to_maxcoherent_decide(s.pure(), request.m);
      results["mode"] = "max_coherent";
      results["m"] = request.m;
      break;
    }
    case DecideMode::heralded: {
      const LoadedFile target = load(request.target);
      inputs.push_back(input_entry(target));
      if (!s.is_pure()) throw ValidationError("heralded decision needs a pure source state");
      const HeraldedEnsemble e = parse_ensemble(target.json);
      verdict = heralded_decide(s.pure(), e);
      results["mode"] = "heralded";
      results["target_distribution"] = heralded_target(e);
      break;
    }
    case DecideMode::qubit: {
      const LoadedFile target = load(request.target);
      inputs.push_back(input_entry(target));
      const DensityMatrix rho = s.density();
      const DensityMatrix sigma = parse_state(target.json).density();
      verdict = qubit_decide(rho, sigma);
      results["mode"] = "qubit";
      results["r_delta"] = Json{{"in", r_delta(rho)}, {"out", r_delta(sigma)}};
      results["l1"] = Json{{"in", l1_norm(rho)}, {"out", l1_norm(sigma)}};
      break;
    }
  }
  results["dio"] = verdict;
  out.report["results"] = std::move(results);
  out.exit_code = verdict ? kAffirmative : kNegative;
  timer.stamp(out.report, options);
  return out;
}

CommandOutcome cmd_channel(const ChannelRequest& request, const RunOptions& options) {
  const Timer timer;
  CommandOutcome out{base_report("channel", options), kAffirmative};
  Json& inputs = out.report["inputs"];
  Json results;
  auto state = [&](const std::string& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string("missing ") + what + " state");
    const LoadedFile f = load(path);
    inputs.push_back(input_entry(f));
    return parse_state(f.json).density();
  };

  if (request.construct.empty()) {
    if (request.verify_path.empty()) throw ValidationError("need --construct or --verify");
    const LoadedFile f = load(request.verify_path);
    inputs.push_back(input_entry(f));
    const QuantumChannel c = parse_channel(f.json);
    const MembershipCheck dio = is_dio(c);
    results["cptp"] = cptp_json(c);
    results["dio"] = membership_json(dio);
    if (c.kraus()) {
      const KrausDioDiagnostics d = kraus_dio_conditions(*c.kraus());
      results["kraus_conditions"] = Json{{"condition1", d.condition1},
                                         {"condition2", d.condition2},
                                         {"condition3", d.condition3},
                                         {"s", matrix_json(d.s.s)}};
    }
    if (!dio.holds) {
      // Random search for an input whose coherence the channel disturbs.
      std::mt19937_64 rng(options.seed);
      double worst = 0.0;
      for (int i = 0; i < 200 && worst <= tolerances().channel; ++i) {
        worst = std::max(worst, is_rho_dio(c, random_density(c.input_dim(), c.input_dim(), rng)).violation);
      }
      results["random_input_violation"] = worst;
    }
    bool verdict = dio.holds;
    if (!request.rho_path.empty()) {
      const DensityMatrix rho = state(request.rho_path, "rho");
      const MembershipCheck rd = is_rho_dio(c, rho);
      results["rho_dio"] = membership_json(rd);
      verdict = rd.holds;
    }
    out.exit_code = verdict ? kAffirmative : kNegative;
  } else if (request.construct == "distill") {
    const DensityMatrix rho = state(request.rho_path, "rho");
    const DistillFidelity fid = distill_fidelity(rho, request.m);
    const QuantumChannel c = construct_distill(rho, request.m, fid.primal);
    const DensityMatrix target = DensityMatrix::from_pure(max_coherent(request.m));
    const Matrix image = c.apply_matrix(rho.matrix());
    results["cptp"] = cptp_json(c);
    results["rho_dio"] = membership_json(is_rho_dio(c, rho));
    results["solver_fidelity"] = fid.value;
    results["duality_gap"] = fid.gap;
    results["output_fidelity"] = fidelity(HermitianMatrix::symmetrized(image), target.hermitian());
    write_channel(c, request.out_path, out.report);
  } else if (request.construct == "dilute") {
    const DensityMatrix omega = state(request.omega_path, "omega");
    const QuantumChannel c = construct_dilute(request.m, omega);
    const DensityMatrix source = DensityMatrix::from_pure(max_coherent(request.m));
    results["cptp"] = cptp_json(c);
    results["rho_dio"] = membership_json(is_rho_dio(c, source));
    results["output_error"] = (c.apply_matrix(source.matrix()) - omega.matrix()).norm();
    write_channel(c, request.out_path, out.report);
  } else if (request.construct == "prop5") {
    const DensityMatrix rho = state(request.rho_path, "rho");
    const DensityMatrix omega = state(request.omega_path, "omega");
    const QuantumChannel c = construct_prop5(rho, omega);
    results["cptp"] = cptp_json(c);
    results["rho_dio"] = membership_json(is_rho_dio(c, rho));
    results["output_error"] = (c.apply_matrix(rho.matrix()) - omega.matrix()).norm();
    write_channel(c, request.out_path, out.report);
  } else {
    throw ValidationError("--construct must be distill, dilute or prop5");
  }
  if (!request.construct.empty()) results["construct"] = request.construct;
  out.report["results"] = std::move(results);
  timer.stamp(out.report, options);
  return out;
}

CommandOutcome cmd_oracle(const std::string& rho_path, const std::string& sigma_path, int max_iters,
                          const std::string& out_path, const RunOptions& options) {
  const Timer timer;
  CommandOutcome out{base_report("oracle", options), kAffirmative};
  const LoadedFile fr = load(rho_path);
  const LoadedFile fs_ = load(sigma_path);
  out.report["inputs"].push_back(input_entry(fr));
  out.report["inputs"].push_back(input_entry(fs_));
  const DensityMatrix rho = parse_state(fr.json).density();
  const DensityMatrix sigma = parse_state(fs_.json).density();
  if (max_iters < 1) throw ValidationError("--max-iters must be positive");

  const FeasibilityVerdict v = rho_dio_feasible(rho, sigma, max_iters);
  Json results{{"status", to_string(v.status)},
               {"residual", number(v.residual)},
               {"iterations", v.iterations},
               {"max_iters", max_iters}};
  switch (v.status) {
    case FeasibilityStatus::kFeasible: {
      const QuantumChannel& w = *v.witness;
      results["witness_checks"] =
          Json{{"cptp", cptp_json(w)},
               {"rho_dio", membership_json(is_rho_dio(w, rho))},
               {"output_error", (w.apply_matrix(rho.matrix()) - sigma.matrix()).norm()}};
      write_channel(w, out_path, out.report);
      out.exit_code = kAffirmative;
      break;
    }
    case FeasibilityStatus::kInfeasibleCertified:
      results["certificate"] = Json{{"monotone", v.certificate->monotone},
                                    {"value_in", v.certificate->value_in},
                                    {"value_out", v.certificate->value_out}};
      out.exit_code = kNegative;
      break;
    case FeasibilityStatus::kUndetermined:
      out.exit_code = kUndetermined;
      break;
  }
  out.report["results"] = std::move(results);
  timer.stamp(out.report, options);
  return out;
}

}  // namespace cohere::cli

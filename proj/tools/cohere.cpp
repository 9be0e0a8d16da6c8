// Command-line front end: JSON in, deterministic JSON reports out.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cohere/cli/commands.hpp"
#include "cohere/tolerance.hpp"

using namespace cohere;
using namespace cohere::cli;

int main(int argc, char** argv) {
  CLI::App app{"cohere: coherence monotones, conversion rates and channel checks"};
  app.require_subcommand(1);

  RunOptions options;
  std::string report_path;
  app.add_option("--seed", options.seed, "Seed for randomized checks")->default_val(0);
  app.add_flag("--timing", options.timing, "Include wall time in the report");
  app.add_option("--report", report_path, "Write the report to this file instead of stdout");

  std::string state_path;
  double eps = 0.0;
  std::string regime_name = "one-shot";

  auto* monotones = app.add_subcommand("monotones", "Coherence monotones of a state (or directory of states)");
  monotones->add_option("state", state_path)->required();

  auto* distill = app.add_subcommand("distill", "Distillable coherence");
  distill->add_option("state", state_path)->required();
  distill->add_option("--eps", eps)->default_val(0.0);
  distill->add_option("--regime", regime_name)
      ->check(CLI::IsMember({"one-shot", "zero", "asymptotic"}))
      ->default_val("one-shot");

  auto* dilute = app.add_subcommand("dilute", "Coherence cost");
  dilute->add_option("state", state_path)->required();
  dilute->add_option("--eps", eps)->default_val(0.0);
  dilute->add_option("--regime", regime_name)
      ->check(CLI::IsMember({"one-shot", "zero", "asymptotic"}))
      ->default_val("one-shot");

  DecideRequest decide_req;
  std::vector<std::string> decide_pair;
  std::string heralded_path;
  std::vector<std::string> qubit_pair;
  int max_coherent_m = 0;
  auto* decide = app.add_subcommand("decide", "Decide a DIO state transformation");
  decide->add_option("states", decide_pair, "psi phi (pure states)")->expected(1, 2);
  decide->add_option("--heralded", heralded_path, "Heralded target ensemble for the source psi");
  decide->add_option("--qubit", qubit_pair, "rho sigma (qubit states)")->expected(2);
  decide->add_option("--max-coherent", max_coherent_m, "Target Psi_m for the source psi");

  ChannelRequest channel_req;
  auto* channel = app.add_subcommand("channel", "Construct or verify channels");
  channel->add_option("--construct", channel_req.construct)
      ->check(CLI::IsMember({"distill", "dilute", "prop5"}));
  channel->add_option("--verify", channel_req.verify_path, "Channel file to verify");
  channel->add_option("--rho", channel_req.rho_path);
  channel->add_option("--omega", channel_req.omega_path);
  channel->add_option("--m", channel_req.m)->default_val(2);
  channel->add_option("--out", channel_req.out_path, "Write the constructed channel here");

  std::vector<std::string> oracle_pair;
  int max_iters = 5000;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Existence of a rho-DIO map with rho -> sigma");
  oracle->add_option("states", oracle_pair, "rho sigma")->expected(2)->required();
  oracle->add_option("--max-iters", max_iters)->default_val(5000);
  oracle->add_option("--out", oracle_out, "Write the witness channel here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (const char* env = std::getenv("COHERE_TOL")) install_tolerances(parse_tolerance_profile(env));

    CommandOutcome outcome;
    if (*monotones) {
      outcome = cmd_monotones(state_path, options);
    } else if (*distill) {
      outcome = cmd_distill(state_path, eps, parse_regime(regime_name), options);
    } else if (*dilute) {
      outcome = cmd_dilute(state_path, eps, parse_regime(regime_name), options);
    } else if (*decide) {
      if (!heralded_path.empty()) {
        decide_req.mode = DecideMode::heralded;
        decide_req.target = heralded_path;
      } else if (!qubit_pair.empty()) {
        decide_req.mode = DecideMode::qubit;
        decide_pair = qubit_pair;
      } else if (max_coherent_m > 0) {
        decide_req.mode = DecideMode::max_coherent;
        decide_req.m = max_coherent_m;
      }
      const std::size_t needed = decide_req.mode == DecideMode::pure_pair || decide_req.mode == DecideMode::qubit ? 2 : 1;
      if (decide_pair.size() != needed) {
        std::cerr << "error: decide expects " << needed << " state path(s)\n";
        return kInputError;
      }
      decide_req.source = decide_pair[0];
      if (needed == 2) decide_req.target = decide_pair[1];
      outcome = cmd_decide(decide_req, options);
    } else if (*channel) {
      outcome = cmd_channel(channel_req, options);
    } else if (*oracle) {
      outcome = cmd_oracle(oracle_pair[0], oracle_pair[1], max_iters, oracle_out, options);
    }

    const std::string text = render(outcome.report);
    if (report_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream(report_path) << text;
    }
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

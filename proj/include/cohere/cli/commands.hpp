#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cohere/cli/serialization.hpp"
#include "cohere/rates.hpp"

namespace cohere::cli {

// Exit-code contract of the command-line tool.
enum ExitCode : int {
  kAffirmative = 0,
  kNegative = 1,
  kUndetermined = 2,
  kInputError = 3,
};

struct RunOptions {
  std::uint64_t seed = 0;
  bool timing = false;
};

struct CommandOutcome {
  Json report;
  int exit_code = kAffirmative;
};

// Every command accepts a state file or, where noted, a directory of
// *.json files processed in filename order.
CommandOutcome cmd_monotones(const std::string& state_path, const RunOptions& options);
CommandOutcome cmd_distill(const std::string& state_path, double eps, Regime regime, const RunOptions& options);
CommandOutcome cmd_dilute(const std::string& state_path, double eps, Regime regime, const RunOptions& options);

enum class DecideMode { pure_pair, heralded, qubit, max_coherent };

struct DecideRequest {
  DecideMode mode = DecideMode::pure_pair;
  std::string source;  // psi, or rho for the qubit mode
  std::string target;  // phi, ensemble, or sigma; unused for max_coherent
  int m = 2;           // max_coherent only
};

CommandOutcome cmd_decide(const DecideRequest& request, const RunOptions& options);

struct ChannelRequest {
  std::string construct;  // "distill", "dilute", "prop5"; empty for --verify
  std::string verify_path;
  std::string rho_path;
  std::string omega_path;
  int m = 2;
  std::string out_path;  // optional channel output file
};

CommandOutcome cmd_channel(const ChannelRequest& request, const RunOptions& options);

CommandOutcome cmd_oracle(const std::string& rho_path, const std::string& sigma_path, int max_iters,
                          const std::string& out_path, const RunOptions& options);

Regime parse_regime(const std::string& name);
Json tolerances_json();

// Deterministic serialization: sorted keys, shortest round-trip doubles.
std::string render(const Json& report);

}  // namespace cohere::cli

#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "cohere/channels.hpp"
#include "cohere/majorization.hpp"

namespace cohere::cli {

using Json = nlohmann::json;

// A parsed state file: either kind keeps its native representation.
class StateInput {
 public:
  explicit StateInput(DensityMatrix rho) : value_(std::move(rho)) {}
  explicit StateInput(PureState psi) : value_(std::move(psi)) {}

  bool is_pure() const { return std::holds_alternative<PureState>(value_); }
  const PureState& pure() const { return std::get<PureState>(value_); }
  DensityMatrix density() const;

 private:
  std::variant<DensityMatrix, PureState> value_;
};

// {"kind":"density","dim":d,"re":[[...]],"im":[[...]]} or
// {"kind":"pure","dim":d,"re":[...],"im":[...]}. Throws ValidationError
// (with the measured violation) on malformed, non-Hermitian, non-PSD or
// unnormalized input.
StateInput parse_state(const Json& j);
Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& psi);

// {"kind":"channel","din":d,"dout":d',"choi_re":[[...]],"choi_im":[[...]],
//  "kraus":[{"re":[[...]],"im":[[...]]}, ...]}; "kraus" optional.
QuantumChannel parse_channel(const Json& j);
Json to_json(const QuantumChannel& channel);

// {"kind":"ensemble","members":[{"prob":p,"state":<pure state>}, ...]}
HeraldedEnsemble parse_ensemble(const Json& j);

// Raw file bytes; throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin);

std::string sha256_hex(const std::string& bytes);

}  // namespace cohere::cli

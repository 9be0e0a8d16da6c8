#include "cohere/cli/serialization.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/sha.h>

#include "cohere/tolerance.hpp"

namespace cohere::cli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ValidationError(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<int>();
}

void expect_kind(const Json& j, const std::string& kind) {
  const Json& k = field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    throw ValidationError("expected kind \"" + kind + "\"");
  }
}

RealMatrix real_matrix(const Json& j, const char* key, int rows, int cols) {
  const Json& v = field(j, key);
  if (!v.is_array() || static_cast<int>(v.size()) != rows) {
    throw DimensionError(std::string("field \"") + key + "\" must have " + std::to_string(rows) + " rows");
  }
  RealMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw DimensionError(std::string("field \"") + key + "\" row " + std::to_string(r) + " must have " +
                           std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw ValidationError(std::string("non-numeric entry in \"") + key + "\"");
      out(r, c) = row[c].get<double>();
    }
  }
  return out;
}

RealVector real_vector(const Json& j, const char* key, int size) {
  const Json& v = field(j, key);
  if (!v.is_array() || static_cast<int>(v.size()) != size) {
    throw DimensionError(std::string("field \"") + key + "\" must have " + std::to_string(size) + " entries");
  }
  RealVector out(size);
  for (int i = 0; i < size; ++i) {
    if (!v[i].is_number()) throw ValidationError(std::string("non-numeric entry in \"") + key + "\"");
    out(i) = v[i].get<double>();
  }
  return out;
}

Matrix complex_matrix(const Json& j, const char* re, const char* im, int rows, int cols) {
  Matrix m(rows, cols);
  m.real() = real_matrix(j, re, rows, cols);
  m.imag() = real_matrix(j, im, rows, cols);
  return m;
}

Json rows_of(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json entries_of(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

DensityMatrix StateInput::density() const {
  if (is_pure()) return DensityMatrix::from_pure(pure());
  return std::get<DensityMatrix>(value_);
}

StateInput parse_state(const Json& j) {
  const Json& kind = field(j, "kind");
  const int dim = positive_int(j, "dim");
  if (kind == "density") {
    return StateInput(DensityMatrix(complex_matrix(j, "re", "im", dim, dim)));
  }
  if (kind == "pure") {
    Vector amps(dim);
    amps.real() = real_vector(j, "re", dim);
    amps.imag() = real_vector(j, "im", dim);
    return StateInput(PureState(std::move(amps)));
  }
  throw ValidationError("state kind must be \"density\" or \"pure\"");
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"kind", "density"},
              {"dim", rho.dim()},
              {"re", rows_of(rho.matrix().real())},
              {"im", rows_of(rho.matrix().imag())}};
}

Json to_json(const PureState& psi) {
  return Json{{"kind", "pure"},
              {"dim", psi.dim()},
              {"re", entries_of(psi.amplitudes().real())},
              {"im", entries_of(psi.amplitudes().imag())}};
}

QuantumChannel parse_channel(const Json& j) {
  expect_kind(j, "channel");
  const int din = positive_int(j, "din");
  const int dout = positive_int(j, "dout");
  const Matrix choi = complex_matrix(j, "choi_re", "choi_im", din * dout, din * dout);
  QuantumChannel channel = QuantumChannel::from_choi(din, dout, choi);
  if (!j.contains("kraus")) return channel;

  const Json& list = j.at("kraus");
  if (!list.is_array() || list.empty()) throw ValidationError("\"kraus\" must be a non-empty array");
  std::vector<Matrix> kraus;
  for (const Json& k : list) kraus.push_back(complex_matrix(k, "re", "im", dout, din));
  QuantumChannel from_kraus = QuantumChannel::from_kraus(std::move(kraus));
  const double mismatch = (from_kraus.choi().matrix() - channel.choi().matrix()).norm();
  if (mismatch > tolerances().channel) {
    throw ValidationError("Kraus operators disagree with the Choi operator: Frobenius mismatch " +
                              std::to_string(mismatch),
                          mismatch);
  }
  return from_kraus;
}

Json to_json(const QuantumChannel& channel) {
  Json j{{"kind", "channel"},
         {"din", channel.input_dim()},
         {"dout", channel.output_dim()},
         {"choi_re", rows_of(channel.choi().matrix().real())},
         {"choi_im", rows_of(channel.choi().matrix().imag())}};
  if (channel.kraus()) {
    Json list = Json::array();
    for (const Matrix& k : *channel.kraus()) {
      list.push_back(Json{{"re", rows_of(k.real())}, {"im", rows_of(k.imag())}});
    }
    j["kraus"] = std::move(list);
  }
  return j;
}

HeraldedEnsemble parse_ensemble(const Json& j) {
  expect_kind(j, "ensemble");
  const Json& members = field(j, "members");
  if (!members.is_array() || members.empty()) throw ValidationError("\"members\" must be a non-empty array");
  std::vector<HeraldedBranch> branches;
  for (const Json& m : members) {
    const Json& p = field(m, "prob");
    if (!p.is_number()) throw ValidationError("\"prob\" must be a number");
    const StateInput s = parse_state(field(m, "state"));
    if (!s.is_pure()) throw ValidationError("ensemble members must be pure states");
    branches.push_back(HeraldedBranch{p.get<double>(), s.pure()});
  }
  return HeraldedEnsemble(std::move(branches));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(origin + ": malformed JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  std::ostringstream out;
  for (unsigned char b : digest) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return out.str();
}

}  // namespace cohere::cli

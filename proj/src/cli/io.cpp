// Copyright 2026 The tangle3 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tangle3/cli/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <ostream>

#include <fmt/chrono.h>
#include <fmt/format.h>

namespace tangle3::cli {
namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw UsageError("expected a complex number as [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw UsageError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kInvalidSubsystem:
    case ErrorKind::kPrecondition:
    case ErrorKind::kNotPsd:
      return kExitInvalidState;
    case ErrorKind::kInfeasibleEnsemble:
    case ErrorKind::kTooManyCurves:
    case ErrorKind::kOutOfEstablishedRange:
    case ErrorKind::kNoBreakpoint:
      return kExitInfeasible;
    case ErrorKind::kDomain:
    case ErrorKind::kUnsupported:
    case ErrorKind::kArity:
    case ErrorKind::kDegenerateInput:
      return kExitUsage;
  }
  return kExitUsage;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

PureState parse_pure_state(const json& j) {
  const json& amps = field(j, "amplitudes");
  if (!amps.is_array()) throw UsageError("\"amplitudes\" must be an array");
  if (amps.size() != 8) {
    throw Error(ErrorKind::kDimensionMismatch,
                "a three-qubit state needs 8 amplitudes, got " + std::to_string(amps.size()));
  }
  PureState psi;
  for (std::size_t i = 0; i < 8; ++i) psi.amplitudes[i] = parse_complex(amps[i]);
  if (!psi.is_normalized(1e-10)) {
    throw Error(ErrorKind::kPrecondition,
                fmt::format("state norm² is {:.12g}, expected 1", psi.norm_squared()));
  }
  return psi;
}

DensityMatrix parse_density_matrix(const json& j) {
  const json& dim_field = field(j, "dim");
  const json& entries = field(j, "entries");
  if (!dim_field.is_number_integer()) throw UsageError("\"dim\" must be an integer");
  if (!entries.is_array()) throw UsageError("\"entries\" must be an array");
  const int dim = dim_field.get<int>();
  if (dim <= 0 || entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("dim {} needs {} entries, got {}", dim, dim * dim, entries.size()));
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(entries[r * dim + c]);
  }
  return DensityMatrix(std::move(m));
}

json complex_array(const Amplitudes& a) {
  json out = json::array();
  for (const Complex& c : a) out.push_back(complex_json(c));
  return out;
}

json to_json(const PureState& psi) { return {{"amplitudes", complex_array(psi.amplitudes)}}; }

json to_json(const DensityMatrix& rho) {
  json entries = json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    for (int c = 0; c < rho.dim(); ++c) entries.push_back(complex_json(rho(r, c)));
  }
  return {{"dim", rho.dim()}, {"entries", std::move(entries)}};
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  return fmt::format("{:.12g}", v);
}

const char* format_bool(bool v) { return v ? "true" : "false"; }

Output::Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
  if (path == "-") return;
  file_.emplace(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!*file_) throw UsageError("cannot write " + path);
}

json Manifest::to_json() const {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = std::strtoll(epoch, nullptr, 10);
  json out = {
      {"command", command},
      {"parameters", parameters},
      {"seed", nullptr},
      {"tool_version", kToolVersion},
      {"timestamp", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(t))},
  };
  if (seed) out["seed"] = *seed;
  return out;
}

void write_sidecar(const Manifest& m, const std::string& data_path, std::ostream& err) {
  const std::string text = m.to_json().dump(2) + "\n";
  if (data_path == "-") {
    err << text;
    return;
  }
  Output sidecar(data_path + ".manifest.json", err);
  sidecar.stream() << text;
}

}  // namespace tangle3::cli

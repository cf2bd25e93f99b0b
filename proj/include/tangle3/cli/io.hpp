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

#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tangle3/error.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInvalidState = 3,
  kExitInfeasible = 4,
};

// Malformed input files and bad flag values; always exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind);

nlohmann::json load_json(const std::string& path);

// {"amplitudes": [[re,im] x 8]}. Structural problems raise UsageError;
// a wrong count or a norm off by more than 1e-10 raises Error.
PureState parse_pure_state(const nlohmann::json& j);
// {"dim": n, "entries": row-major [[re,im] x n²]}.
DensityMatrix parse_density_matrix(const nlohmann::json& j);

nlohmann::json complex_array(const Amplitudes& a);
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);

// 12 significant digits, '.' separator, no negative zero.
std::string format_number(double v);
const char* format_bool(bool v);

// "-" selects the fallback stream (stdout for the CLI).
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback);

  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool is_stdout() const { return !file_; }

 private:
  std::ostream& fallback_;
  std::optional<std::ofstream> file_;
};

struct Manifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;

  // Timestamp is current UTC, or SOURCE_DATE_EPOCH when that is set.
  nlohmann::json to_json() const;
};

// CSV outputs get "<path>.manifest.json"; for "-" the manifest goes to err.
void write_sidecar(const Manifest& m, const std::string& data_path, std::ostream& err);

}  // namespace tangle3::cli

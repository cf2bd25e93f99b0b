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

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tangle3 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Amplitudes a_ijk of a three-qubit state, stored at index 4i + 2j + k.
// Qubit A is the most significant bit.
using Amplitudes = std::array<Complex, 8>;

constexpr int basis_index(int i, int j, int k) { return 4 * i + 2 * j + k; }

enum class Qubit { kA, kB, kC };

struct PureState {
  Amplitudes amplitudes{};

  static PureState basis(int i, int j, int k);
  static PureState from_vector(const Vector& v);

  double norm_squared() const;
  bool is_normalized(double tol = 1e-12) const;
  Vector to_vector() const;
  Complex operator[](int index) const { return amplitudes[index]; }
};

Complex inner_product(const PureState& bra, const PureState& ket);

enum class GhzSign { kPlus, kMinus };

// |GHZ,k±>: k = 1 pairs |000>,|111>; k = 2 pairs |110>,|001>;
// k = 3 pairs |101>,|010>; k = 4 pairs |011>,|100>.
class GhzLabel {
 public:
  GhzLabel(int index, GhzSign sign);

  int index() const { return index_; }
  GhzSign sign() const { return sign_; }
  double sign_value() const { return sign_ == GhzSign::kPlus ? 1.0 : -1.0; }
  std::string to_string() const;

  static std::array<GhzLabel, 8> all();

  friend bool operator==(const GhzLabel&, const GhzLabel&) = default;

 private:
  int index_;
  GhzSign sign_;
};

PureState ghz_state(const GhzLabel& label);

// Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 4 or 8.
// Construction validates; an invalid matrix never exists as a DensityMatrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenvalueTol = 1e-10;

  explicit DensityMatrix(Matrix entries);

  static DensityMatrix from_pure(const PureState& psi);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  // Number of eigenvalues above 1e-10.
  int rank() const;

 private:
  Matrix entries_;
};

struct EnsembleMember {
  double weight;
  PureState state;
};

// A decomposition {p_i, |psi_i>}: weights strictly positive, summing to one.
class Ensemble {
 public:
  static constexpr double kWeightSumTol = 1e-12;

  Ensemble() = default;
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<EnsembleMember> members_;
};

// Same as EnsembleMember but for states of any dimension.
struct WeightedVector {
  double weight;
  Vector state;
};

DensityMatrix density_from_ensemble(const Ensemble& ensemble);
DensityMatrix density_from_ensemble(const std::vector<WeightedVector>& members);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Qubit>& keep);

}  // namespace tangle3

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

#include "tangle3/qstate.hpp"

#include <cmath>
#include <numeric>

#include "tangle3/error.hpp"
#include "tangle3/linalg.hpp"

namespace tangle3 {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension_mismatch";
    case ErrorKind::kInvalidSubsystem: return "invalid_subsystem";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kNotPsd: return "not_psd";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kOutOfEstablishedRange: return "out_of_established_range";
    case ErrorKind::kNoBreakpoint: return "no_breakpoint";
    case ErrorKind::kArity: return "arity";
    case ErrorKind::kInfeasibleEnsemble: return "infeasible_ensemble";
    case ErrorKind::kTooManyCurves: return "too_many_curves";
    case ErrorKind::kDegenerateInput: return "degenerate_input";
  }
  return "unknown";
}

PureState PureState::basis(int i, int j, int k) {
  PureState psi;
  psi.amplitudes[basis_index(i, j, k)] = 1.0;
  return psi;
}

PureState PureState::from_vector(const Vector& v) {
  if (v.size() != 8) {
    throw Error(ErrorKind::kDimensionMismatch, "three-qubit state needs 8 amplitudes");
  }
  PureState psi;
  for (int i = 0; i < 8; ++i) psi.amplitudes[i] = v(i);
  return psi;
}

double PureState::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return sum;
}

bool PureState::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

Vector PureState::to_vector() const {
  Vector v(8);
  for (int i = 0; i < 8; ++i) v(i) = amplitudes[i];
  return v;
}

Complex inner_product(const PureState& bra, const PureState& ket) {
  Complex sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += std::conj(bra.amplitudes[i]) * ket.amplitudes[i];
  return sum;
}

GhzLabel::GhzLabel(int index, GhzSign sign) : index_(index), sign_(sign) {
  if (index < 1 || index > 4) {
    throw Error(ErrorKind::kDomain, "GHZ label index must be in 1..4");
  }
}

std::string GhzLabel::to_string() const {
  return "GHZ," + std::to_string(index_) + (sign_ == GhzSign::kPlus ? "+" : "-");
}

std::array<GhzLabel, 8> GhzLabel::all() {
  return {GhzLabel(1, GhzSign::kPlus), GhzLabel(1, GhzSign::kMinus),
          GhzLabel(2, GhzSign::kPlus), GhzLabel(2, GhzSign::kMinus),
          GhzLabel(3, GhzSign::kPlus), GhzLabel(3, GhzSign::kMinus),
          GhzLabel(4, GhzSign::kPlus), GhzLabel(4, GhzSign::kMinus)};
}

PureState ghz_state(const GhzLabel& label) {
  // (first, second) computational basis indices for each pair.
  static constexpr std::array<std::array<int, 2>, 4> kPairs = {{
      {basis_index(0, 0, 0), basis_index(1, 1, 1)},
      {basis_index(1, 1, 0), basis_index(0, 0, 1)},
      {basis_index(1, 0, 1), basis_index(0, 1, 0)},
      {basis_index(0, 1, 1), basis_index(1, 0, 0)},
  }};
  const auto& pair = kPairs[label.index() - 1];
  const double h = 1.0 / std::sqrt(2.0);
  PureState psi;
  psi.amplitudes[pair[0]] = h;
  psi.amplitudes[pair[1]] = label.sign_value() * h;
  return psi;
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (entries_.cols() != n || (n != 2 && n != 4 && n != 8)) {
    throw Error(ErrorKind::kDimensionMismatch, "density matrix must be 2x2, 4x4 or 8x8");
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorKind::kPrecondition, "density matrix has non-finite entries");
  }
  if (!is_hermitian(entries_, kHermitianTol)) {
    throw Error(ErrorKind::kPrecondition, "density matrix is not Hermitian");
  }
  const Complex trace = entries_.trace();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw Error(ErrorKind::kPrecondition, "density matrix trace is not 1");
  }
  const Eigensystem es = hermitian_eigensystem(entries_);
  if (es.values(n - 1) < -kEigenvalueTol) {
    throw Error(ErrorKind::kNotPsd, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector v = psi.to_vector();
  return DensityMatrix(v * v.adjoint());
}

int DensityMatrix::rank() const {
  const Eigensystem es = hermitian_eigensystem(entries_);
  int r = 0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > 1e-10) ++r;
  }
  return r;
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorKind::kPrecondition, "ensemble is empty");
  }
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight > 0.0)) {
      throw Error(ErrorKind::kPrecondition, "ensemble weights must be positive");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw Error(ErrorKind::kPrecondition, "ensemble weights do not sum to 1");
  }
}

DensityMatrix density_from_ensemble(const Ensemble& ensemble) {
  Matrix rho = Matrix::Zero(8, 8);
  for (const auto& m : ensemble) {
    const Vector v = m.state.to_vector();
    rho.noalias() += m.weight * (v * v.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix density_from_ensemble(const std::vector<WeightedVector>& members) {
  if (members.empty()) {
    throw Error(ErrorKind::kPrecondition, "ensemble is empty");
  }
  const auto n = members.front().state.size();
  Matrix rho = Matrix::Zero(n, n);
  for (const auto& m : members) {
    if (m.state.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "ensemble members have different dimensions");
    }
    rho.noalias() += m.weight * (m.state * m.state.adjoint());
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Qubit>& keep) {
  if (rho.dim() != 8) {
    throw Error(ErrorKind::kDimensionMismatch, "partial_trace expects a three-qubit state");
  }
  // Bit position of each qubit in the basis index.
  auto bit_of = [](Qubit q) {
    switch (q) {
      case Qubit::kA: return 2;
      case Qubit::kB: return 1;
      case Qubit::kC: return 0;
    }
    return 0;
  };
  std::array<bool, 3> kept{};
  for (Qubit q : keep) kept[bit_of(q)] = true;
  std::vector<int> kept_bits;  // most significant first
  std::vector<int> traced_bits;
  for (int bit = 2; bit >= 0; --bit) (kept[bit] ? kept_bits : traced_bits).push_back(bit);
  if (kept_bits.empty() || traced_bits.empty()) {
    throw Error(ErrorKind::kInvalidSubsystem, "keep must be a nonempty proper subset of {A,B,C}");
  }

  const int kept_count = static_cast<int>(kept_bits.size());
  const int traced_count = static_cast<int>(traced_bits.size());
  const int dim = 1 << kept_count;
  auto full_index = [&](int kept_value, int traced_value) {
    int index = 0;
    for (int i = 0; i < kept_count; ++i) {
      if ((kept_value >> (kept_count - 1 - i)) & 1) index |= 1 << kept_bits[i];
    }
    for (int i = 0; i < traced_count; ++i) {
      if ((traced_value >> (traced_count - 1 - i)) & 1) index |= 1 << traced_bits[i];
    }
    return index;
  };

  Matrix reduced = Matrix::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      for (int t = 0; t < (1 << traced_count); ++t) {
        reduced(r, c) += rho(full_index(r, t), full_index(c, t));
      }
    }
  }
  return DensityMatrix(std::move(reduced));
}

}  // namespace tangle3

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

#include <vector>

#include "tangle3/family_spec.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3 {

/// The three monomial sums of the Cayley hyperdeterminant,
///   d1 = a000² a111² + a001² a110² + a010² a101² + a100² a011²
///   d2 = sum over the six products a_u a_ū a_v a_v̄ of distinct antipodal pairs
///   d3 = a000 a110 a101 a011 + a111 a001 a010 a100
/// so that tau3 = 4 |d1 - 2 d2 + 4 d3|.
struct DCoefficients {
  Complex d1;
  Complex d2;
  Complex d3;
};

DCoefficients d_coefficients(const Amplitudes& a);
inline DCoefficients d_coefficients(const PureState& psi) { return d_coefficients(psi.amplitudes); }

/// 4 |d1 - 2 d2 + 4 d3| without any normalization check. Homogeneous of
/// degree four: scaling the amplitudes by c scales the value by |c|^4.
double tangle_polynomial(const Amplitudes& a);

/// Three-tangle of a normalized pure state. Throws kPrecondition when the
/// norm deviates from one by more than 1e-10.
double three_tangle_pure(const PureState& psi);

/// A point on one of the Z-state curves: sqrt(x)|lead> - sum_j e^{i phi_j}
/// sqrt((1-x) w_j)|b_j>, one phase per background state of the family.
struct ZStateSpec {
  FamilyId family;
  double mix;
  std::vector<double> phases;
};

PureState z_state(const ZStateSpec& spec);

/// Closed forms for ranks 4 and 5. Ranks 6-8 have none and fall back
/// to the hyperdeterminant of z_state(spec).
double tau3_z_closed_form(const ZStateSpec& spec);

/// Wootters concurrence of a two-qubit density matrix, using
/// rho~ = (Y⊗Y) rho* (Y⊗Y) and the spectrum of sqrt(rho) rho~ sqrt(rho).
double concurrence_two_qubit(const DensityMatrix& rho);

/// 4 det(rho_X) of the single-qubit marginal. The unnormalized overload is
/// degree-four homogeneous like tangle_polynomial.
double one_tangle_polynomial(const Amplitudes& a, Qubit subsystem);
double one_tangle_pure(const PureState& psi, Qubit subsystem);

}  // namespace tangle3

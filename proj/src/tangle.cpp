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

#include "tangle3/tangle.hpp"

#include <algorithm>
#include <cmath>

#include "tangle3/error.hpp"
#include "tangle3/linalg.hpp"

namespace tangle3 {
namespace {

Complex a_(const Amplitudes& a, int i, int j, int k) { return a[basis_index(i, j, k)]; }

void check_spec(const ZStateSpec& spec, const FamilySpec& f) {
  if (!(spec.mix >= 0.0 && spec.mix <= 1.0)) {
    throw Error(ErrorKind::kDomain, "Z-state mix parameter must lie in [0,1]");
  }
  if (spec.phases.size() != f.phase_count()) {
    throw Error(ErrorKind::kArity, family_name(f.id) + " Z-states take " +
                                       std::to_string(f.phase_count()) + " phases, got " +
                                       std::to_string(spec.phases.size()));
  }
}

Complex e_i(double angle) { return std::polar(1.0, angle); }

double rank4_closed_form(double p, const std::vector<double>& phi) {
  const double q = 1.0 - p;
  Complex v = p * p;
  for (double f : phi) {
    v += q * q / 9.0 * e_i(4.0 * f);
    v += 2.0 / 3.0 * p * q * e_i(2.0 * f);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) v -= 2.0 * q * q / 9.0 * e_i(2.0 * (phi[i] + phi[j]));
  }
  return std::abs(v);
}

double rank5_closed_form(double p, const std::vector<double>& phi) {
  const double q = 1.0 - p;
  Complex v = p * p;
  v += q * q / 100.0 * e_i(4.0 * phi[0]);
  v -= p * q / 5.0 * e_i(2.0 * phi[0]);
  for (int j = 1; j < 4; ++j) {
    v += 9.0 * q * q / 100.0 * e_i(4.0 * phi[j]);
    v -= 3.0 / 5.0 * p * q * e_i(2.0 * phi[j]);
    v += 3.0 * q * q / 50.0 * e_i(2.0 * (phi[0] + phi[j]));
  }
  for (int i = 1; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) v -= 9.0 * q * q / 50.0 * e_i(2.0 * (phi[i] + phi[j]));
  }
  v -= 6.0 / 25.0 * std::sqrt(30.0) * std::sqrt(p * q * q * q) * e_i(phi[1] + phi[2] + phi[3]);
  return std::abs(v);
}

}  // namespace

DCoefficients d_coefficients(const Amplitudes& a) {
  const Complex a000 = a_(a, 0, 0, 0), a001 = a_(a, 0, 0, 1), a010 = a_(a, 0, 1, 0),
                a011 = a_(a, 0, 1, 1), a100 = a_(a, 1, 0, 0), a101 = a_(a, 1, 0, 1),
                a110 = a_(a, 1, 1, 0), a111 = a_(a, 1, 1, 1);
  DCoefficients d;
  d.d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
         a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
  d.d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
         a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
         a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  d.d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return d;
}

double tangle_polynomial(const Amplitudes& a) {
  const DCoefficients d = d_coefficients(a);
  return 4.0 * std::abs(d.d1 - 2.0 * d.d2 + 4.0 * d.d3);
}

double three_tangle_pure(const PureState& psi) {
  if (!psi.is_normalized(1e-10)) {
    throw Error(ErrorKind::kPrecondition, "three_tangle_pure: state is not normalized");
  }
  return tangle_polynomial(psi.amplitudes);
}

PureState z_state(const ZStateSpec& spec) {
  const FamilySpec& f = family(spec.family);
  check_spec(spec, f);
  const double x = spec.mix;
  PureState psi;
  const PureState lead = ghz_state(f.lead);
  for (int i = 0; i < 8; ++i) psi.amplitudes[i] = std::sqrt(x) * lead.amplitudes[i];
  for (std::size_t j = 0; j < f.background.size(); ++j) {
    const Complex coeff = e_i(spec.phases[j]) * std::sqrt((1.0 - x) * f.background[j].weight.value());
    const PureState b = ghz_state(f.background[j].label);
    for (int i = 0; i < 8; ++i) psi.amplitudes[i] -= coeff * b.amplitudes[i];
  }
  return psi;
}

double tau3_z_closed_form(const ZStateSpec& spec) {
  const FamilySpec& f = family(spec.family);
  check_spec(spec, f);
  switch (spec.family) {
    case FamilyId::kRank4:
      return rank4_closed_form(spec.mix, spec.phases);
    case FamilyId::kRank5:
      return rank5_closed_form(spec.mix, spec.phases);
    default:
      return tangle_polynomial(z_state(spec).amplitudes);
  }
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(ErrorKind::kPrecondition, "concurrence needs a two-qubit density matrix");
  }
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  // With rho = X X^dagger, the square roots of the spectrum of
  // sqrt(rho) rho~ sqrt(rho) are the singular values of X^T (Y⊗Y) X. Taking
  // them directly avoids square-rooting rounding noise near zero.
  const Eigensystem es = hermitian_eigensystem(rho.entries());
  Matrix x = es.vectors;
  for (int k = 0; k < 4; ++k) x.col(k) *= std::sqrt(std::max(es.values(k), 0.0));
  const Matrix tau = x.transpose() * yy * x;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(tau).singularValues();
  std::array<double, 4> lambda{};
  for (int k = 0; k < 4; ++k) lambda[k] = sv(k);
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double one_tangle_polynomial(const Amplitudes& a, Qubit subsystem) {
  const int bit = subsystem == Qubit::kA ? 2 : (subsystem == Qubit::kB ? 1 : 0);
  double r00 = 0.0;
  double r11 = 0.0;
  Complex r01 = 0.0;
  for (int index = 0; index < 8; ++index) {
    if ((index >> bit) & 1) continue;
    const Complex zero = a[index];
    const Complex one = a[index | (1 << bit)];
    r00 += std::norm(zero);
    r11 += std::norm(one);
    r01 += zero * std::conj(one);
  }
  return 4.0 * (r00 * r11 - std::norm(r01));
}

double one_tangle_pure(const PureState& psi, Qubit subsystem) {
  if (!psi.is_normalized(1e-10)) {
    throw Error(ErrorKind::kPrecondition, "one_tangle_pure: state is not normalized");
  }
  return one_tangle_polynomial(psi.amplitudes, subsystem);
}

}  // namespace tangle3

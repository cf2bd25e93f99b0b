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

#include "tangle3/ckw.hpp"

#include <algorithm>
#include <cmath>

#include "tangle3/error.hpp"
#include "tangle3/families.hpp"
#include "tangle3/tangle.hpp"

namespace tangle3 {
namespace {

constexpr double kFlagTol = 1e-9;

double one_tangle_a(const Amplitudes& a) { return one_tangle_polynomial(a, Qubit::kA); }

}  // namespace

double one_tangle_rank5_closed(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kDomain, "one_tangle_rank5_closed: p must lie in [0,1]");
  }
  const double q = 1.0 - p;
  return 1.0 - 8.0 / 5.0 * p * q - 9.0 / 25.0 * q * q +
         6.0 * std::sqrt(30.0) / 25.0 * std::sqrt(p * q * q * q);
}

RoofResult min_one_tangle_search(const DensityMatrix& rho, const RoofConfig& cfg) {
  return minimize_roof(rho, cfg, one_tangle_a);
}

double min_one_tangle_estimate(const DensityMatrix& rho, const RoofConfig& cfg) {
  return min_one_tangle_search(rho, cfg).value;
}

OneTangleCrossCheck cross_check_rank5_one_tangle(double p, const RoofConfig& cfg) {
  OneTangleCrossCheck out{};
  out.closed = one_tangle_rank5_closed(p);
  out.estimated = min_one_tangle_estimate(family_state(family(FamilyId::kRank5), p), cfg);
  out.discrepancy = out.closed - out.estimated;
  out.flagged = std::abs(out.discrepancy) > 5e-3;
  return out;
}

std::vector<CkwRow> ckw_report(const FamilySpec& f, std::span<const double> x_grid,
                               const RoofConfig& cfg) {
  if (f.rank < 5) {
    throw Error(ErrorKind::kUnsupported, "CKW report needs a family with a full tangle curve");
  }
  std::vector<double> xs(x_grid.begin(), x_grid.end());
  std::sort(xs.begin(), xs.end());

  std::vector<CkwRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    const DensityMatrix rho = family_state(f, x);
    CkwRow row;
    row.x = x;
    const double c_ab = concurrence_two_qubit(partial_trace(rho, {Qubit::kA, Qubit::kB}));
    const double c_ac = concurrence_two_qubit(partial_trace(rho, {Qubit::kA, Qubit::kC}));
    row.c2_ab = c_ab * c_ab;
    row.c2_ac = c_ac * c_ac;
    row.tau3 = tau3_family(f, x);
    const DensityMatrix rho_a = partial_trace(rho, {Qubit::kA});
    row.one_tangle_direct = 4.0 * (rho_a(0, 0) * rho_a(1, 1) - rho_a(0, 1) * rho_a(1, 0)).real();
    if (f.id == FamilyId::kRank5) {
      row.one_tangle_closed = one_tangle_rank5_closed(x);
    } else {
      row.one_tangle_closed = min_one_tangle_estimate(rho, cfg);
      row.estimated = true;
    }
    row.inequality_ok = row.one_tangle_closed + kFlagTol >= row.c2_ab + row.c2_ac;
    row.strong_ok = row.one_tangle_closed + kFlagTol >= row.c2_ab + row.c2_ac + row.tau3;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tangle3

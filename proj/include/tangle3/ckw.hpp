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

#include <span>
#include <vector>

#include "tangle3/convexroof.hpp"
#include "tangle3/family_spec.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3 {

// 1 - (8/5) p(1-p) - (9/25)(1-p)² + (6 sqrt(30)/25) sqrt(p(1-p)³).
double one_tangle_rank5_closed(double p);

// Convex-roof style minimum of the decomposition-averaged 4 det(rho_A).
RoofResult min_one_tangle_search(const DensityMatrix& rho, const RoofConfig& cfg);
double min_one_tangle_estimate(const DensityMatrix& rho, const RoofConfig& cfg);

struct OneTangleCrossCheck {
  double closed;
  double estimated;
  double discrepancy;  // closed - estimated
  bool flagged;        // |discrepancy| > 5e-3
};

OneTangleCrossCheck cross_check_rank5_one_tangle(double p, const RoofConfig& cfg);

struct CkwRow {
  double x = 0.0;
  double one_tangle_closed = 0.0;  // closed form for rank 5, estimator otherwise
  double one_tangle_direct = 0.0;  // 4 det(rho_A) of the mixed state itself
  double c2_ab = 0.0;
  double c2_ac = 0.0;
  double tau3 = 0.0;
  bool inequality_ok = false;
  bool strong_ok = false;
  bool estimated = false;
};

// Rows in ascending x. cfg is only used by families without a closed-form
// one-tangle (ranks 6-8).
std::vector<CkwRow> ckw_report(const FamilySpec& f, std::span<const double> x_grid,
                               const RoofConfig& cfg);

}  // namespace tangle3

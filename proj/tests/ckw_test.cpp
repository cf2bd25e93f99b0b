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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tangle3/families.hpp"
#include "tangle3/tangle.hpp"
#include "test_util.hpp"

namespace tangle3 {
namespace {

RoofConfig quick_config(std::uint64_t seed) {
  RoofConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 8;
  cfg.max_iters = 4000;
  return cfg;
}

TEST(OneTangleRank5Closed, Endpoints) {
  EXPECT_EQ(one_tangle_rank5_closed(1.0), 1.0);
  EXPECT_NEAR(one_tangle_rank5_closed(0.0), 16.0 / 25.0, 1e-15);
  EXPECT_THROW_KIND(one_tangle_rank5_closed(1.5), ErrorKind::kDomain);
}

TEST(OneTangleRank5Closed, PositiveWhereTangleVanishes) {
  const double p = find_x0(family(FamilyId::kRank5));
  EXPECT_NEAR(p, 0.7377, 1e-4);
  EXPECT_GT(one_tangle_rank5_closed(p), 0.1);
  EXPECT_NEAR(tau3_family(family(FamilyId::kRank5), p), 0.0, 1e-12);
}

TEST(OneTangleRank5Closed, EqualsZStateAverage) {
  // The closed form is the one-tangle averaged over the eight equal-weight
  // Z-state members of the g_I decomposition.
  for (double p : {0.0, 0.3, 0.7377, 0.9, 1.0}) {
    double avg = 0.0;
    for (const auto& row : sign_patterns(family(FamilyId::kRank5)).rows) {
      std::vector<double> phases;
      for (int s : row) phases.push_back(s > 0 ? 0.0 : M_PI);
      avg += one_tangle_pure(z_state({FamilyId::kRank5, p, phases}), Qubit::kA) / 8.0;
    }
    EXPECT_NEAR(avg, one_tangle_rank5_closed(p), 1e-12) << "p=" << p;
  }
}

TEST(MinOneTangle, PureGhz) {
  RoofConfig cfg = quick_config(1);
  cfg.ensemble_size = 2;
  const DensityMatrix rho = DensityMatrix::from_pure(ghz_state(GhzLabel(1, GhzSign::kPlus)));
  EXPECT_NEAR(min_one_tangle_estimate(rho, cfg), 1.0, 1e-6);
}

TEST(MinOneTangle, SeparableMixture) {
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(7, 7) = 0.5;
  EXPECT_LT(min_one_tangle_estimate(DensityMatrix(m), quick_config(2)), 1e-4);
}

TEST(MinOneTangle, Rank5CrossCheckReportsDiscrepancy) {
  // The estimator finds decompositions below the closed form; the cross
  // check reports this instead of failing.
  RoofConfig cfg;
  cfg.seed = 42;
  const OneTangleCrossCheck check = cross_check_rank5_one_tangle(0.9, cfg);
  EXPECT_LE(check.estimated, check.closed + 5e-3);
  EXPECT_EQ(check.flagged, std::abs(check.discrepancy) > 5e-3);
  EXPECT_NEAR(check.discrepancy, check.closed - check.estimated, 1e-15);
}

TEST(MinOneTangle, BelowMixedDeterminant) {
  std::mt19937_64 rng(3);
  RoofConfig cfg = quick_config(4);
  cfg.restarts = 4;
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho(testing::random_density(8, 2 + trial, rng));
    const DensityMatrix a = partial_trace(rho, {Qubit::kA});
    const double det4 = 4.0 * (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    EXPECT_LE(min_one_tangle_estimate(rho, cfg), det4 + 1e-9);
  }
}

TEST(CkwReport, Rank5Grid) {
  const FamilySpec& f = family(FamilyId::kRank5);
  const auto grid = uniform_grid(100);
  const auto rows = ckw_report(f, grid, RoofConfig{});
  ASSERT_EQ(rows.size(), 100u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.c2_ab, 0.0, 1e-10);
    EXPECT_NEAR(r.c2_ac, 0.0, 1e-10);
    EXPECT_TRUE(r.inequality_ok);
    EXPECT_TRUE(r.strong_ok);
    EXPECT_FALSE(r.estimated);
    EXPECT_GE(r.one_tangle_closed, r.tau3);
    EXPECT_GE(r.tau3, 0.0);
    EXPECT_GE(r.one_tangle_closed, 16.0 / 25.0 - 1e-12);
    EXPECT_LE(r.one_tangle_closed, 1.0 + 1e-12);
    EXPECT_NEAR(r.one_tangle_direct, 1.0, 1e-12);
  }
  const CkwRow& last = rows.back();
  EXPECT_EQ(last.x, 1.0);
  EXPECT_EQ(last.one_tangle_closed, 1.0);
  EXPECT_NEAR(last.tau3, 1.0, 1e-15);
}

TEST(CkwReport, SortsGrid) {
  const std::vector<double> grid = {0.9, 0.1, 0.5};
  const auto rows = ckw_report(family(FamilyId::kRank5), grid, RoofConfig{});
  EXPECT_EQ(rows[0].x, 0.1);
  EXPECT_EQ(rows[1].x, 0.5);
  EXPECT_EQ(rows[2].x, 0.9);
}

TEST(CkwReport, HigherRankUsesEstimator) {
  const std::vector<double> grid = {0.5};
  RoofConfig cfg = quick_config(5);
  cfg.restarts = 2;
  const auto rows = ckw_report(family(FamilyId::kRank6), grid, cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].estimated);
  EXPECT_LE(rows[0].one_tangle_closed, rows[0].one_tangle_direct + 1e-9);
  EXPECT_TRUE(rows[0].inequality_ok);
}

TEST(CkwReport, Rank4Unsupported) {
  const std::vector<double> grid = {0.1};
  EXPECT_THROW_KIND(ckw_report(family(FamilyId::kRank4), grid, RoofConfig{}),
                    ErrorKind::kUnsupported);
}

}  // namespace
}  // namespace tangle3

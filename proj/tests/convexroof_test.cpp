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

#include "tangle3/convexroof.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tangle3/families.hpp"
#include "tangle3/linalg.hpp"
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

double witness_residual(const RoofResult& r, const DensityMatrix& rho) {
  return max_abs(density_from_ensemble(r.witness).entries() - rho.entries());
}

TEST(RoofConfig, Validation) {
  RoofConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.ensemble_size = RoofConfig::kMaxEnsembleSize + 1;
  EXPECT_THROW_KIND(cfg.validate(), ErrorKind::kInfeasibleEnsemble);
  cfg = RoofConfig{};
  cfg.restarts = 0;
  EXPECT_THROW_KIND(cfg.validate(), ErrorKind::kDomain);
  cfg = RoofConfig{};
  cfg.step_min = cfg.step_init;
  EXPECT_THROW_KIND(cfg.validate(), ErrorKind::kDomain);
}

TEST(EstimateRoof, PureGhz) {
  const DensityMatrix rho = DensityMatrix::from_pure(ghz_state(GhzLabel(1, GhzSign::kPlus)));
  RoofConfig cfg = quick_config(1);
  cfg.ensemble_size = 2;
  const RoofResult r = estimate_roof(rho, cfg);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_LE(witness_residual(r, rho), 1e-10);
}

TEST(EstimateRoof, BackgroundMixtureVanishes) {
  const DensityMatrix rho = family_state(family(FamilyId::kRank5), 0.0);
  RoofConfig cfg;
  cfg.seed = 2;
  cfg.ensemble_size = 16;
  const RoofResult r = estimate_roof(rho, cfg);
  EXPECT_LT(r.value, 1e-4);
  EXPECT_GE(r.value + 1e-9, 0.0);
  EXPECT_LE(witness_residual(r, rho), 1e-10);
}

TEST(EstimateRoof, Rank5NearAnalyticCurve) {
  // The search may undercut the Z-state curve (it is not a lower bound for
  // general decompositions), but never lands more than 5e-3 above it.
  const FamilySpec& f = family(FamilyId::kRank5);
  const DensityMatrix rho = family_state(f, 0.85);
  RoofConfig cfg;
  cfg.seed = 42;
  cfg.ensemble_size = 16;
  const RoofResult r = estimate_roof(rho, cfg);
  EXPECT_LE(r.value, tau3_family(f, 0.85) + 5e-3);
  EXPECT_LE(witness_residual(r, rho), 1e-10);
  EXPECT_NEAR(average_tangle(r.witness), r.value, 1e-12);
}

TEST(EstimateRoof, UpperBoundOnSeparableMixture) {
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(7, 7) = 0.5;
  const RoofResult r = estimate_roof(DensityMatrix(m), quick_config(3));
  EXPECT_LT(r.value, 1e-4);
}

TEST(EstimateRoof, InfeasibleEnsembleSize) {
  RoofConfig cfg = quick_config(4);
  cfg.ensemble_size = 3;
  EXPECT_THROW_KIND(estimate_roof(family_state(family(FamilyId::kRank5), 0.5), cfg),
                    ErrorKind::kInfeasibleEnsemble);
}

TEST(EstimateRoof, RejectsNonThreeQubitInput) {
  EXPECT_THROW_KIND(estimate_roof(DensityMatrix(Matrix::Identity(4, 4) / 4.0), quick_config(5)),
                    ErrorKind::kDimensionMismatch);
}

TEST(EstimateRoof, TracesAreMonotone) {
  const RoofResult r = estimate_roof(family_state(family(FamilyId::kRank6), 0.6), quick_config(6));
  ASSERT_EQ(r.restarts.size(), 8u);
  for (const auto& s : r.restarts) {
    EXPECT_LE(s.final, s.initial);
    for (std::size_t i = 1; i < s.trace.size(); ++i) EXPECT_LE(s.trace[i], s.trace[i - 1]);
    EXPECT_EQ(static_cast<int>(s.trace.size()), s.accepted);
  }
  EXPECT_EQ(r.value, r.restarts[r.best_restart].final);
}

TEST(EstimateRoof, DeterministicAcrossThreadCounts) {
  const DensityMatrix rho = family_state(family(FamilyId::kRank5), 0.9);
  RoofConfig cfg = quick_config(77);
  cfg.threads = 1;
  const RoofResult a = estimate_roof(rho, cfg);
  cfg.threads = 4;
  const RoofResult b = estimate_roof(rho, cfg);
  const RoofResult c = estimate_roof(rho, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(b.value, c.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  ASSERT_EQ(a.witness.size(), b.witness.size());
  for (std::size_t i = 0; i < a.witness.size(); ++i) {
    EXPECT_EQ(a.witness.members()[i].weight, b.witness.members()[i].weight);
    EXPECT_EQ(a.witness.members()[i].state.amplitudes, b.witness.members()[i].state.amplitudes);
  }
}

TEST(EstimateRoof, SeedChangesSearch) {
  const DensityMatrix rho = family_state(family(FamilyId::kRank5), 0.9);
  const RoofResult a = estimate_roof(rho, quick_config(1));
  const RoofResult b = estimate_roof(rho, quick_config(2));
  EXPECT_NE(a.restarts[0].initial, b.restarts[0].initial);
}

TEST(EstimateRoof, WitnessValidOnRandomStates) {
  std::mt19937_64 rng(8);
  RoofConfig cfg = quick_config(9);
  cfg.restarts = 2;
  cfg.max_iters = 500;
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho(testing::random_density(8, 1 + trial % 6, rng));
    const RoofResult r = estimate_roof(rho, cfg);
    EXPECT_LE(witness_residual(r, rho), 1e-10);
    EXPECT_GE(r.value, 0.0);
  }
}

TEST(UniformGrid, Endpoints) {
  const auto g = uniform_grid(5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_EQ(g[2], 0.5);
  EXPECT_THROW_KIND(uniform_grid(1), ErrorKind::kDomain);
}

TEST(PhaseLattice, Rank5StepHasTwentyOnePoints) {
  EXPECT_EQ(phase_lattice(0.3).size(), 21u);
  EXPECT_EQ(phase_lattice(std::numbers::pi / 2).size(), 4u);
  EXPECT_EQ(curve_count(family(FamilyId::kRank5), 0.3), 194481u);
}

TEST(CharacteristicCurves, ZeroPhaseCurveIsGOne) {
  for (FamilyId id : {FamilyId::kRank5, FamilyId::kRank6, FamilyId::kRank7, FamilyId::kRank8}) {
    const FamilySpec& f = family(id);
    const auto grid = uniform_grid(41);
    const CurveSet set = characteristic_curves(f, std::numbers::pi / 2, grid);
    ASSERT_EQ(set.curves.size(), curve_count(f, std::numbers::pi / 2));
    const Curve& zero = set.curves.front();
    for (double p : zero.phases) EXPECT_EQ(p, 0.0);
    const double x0 = find_x0(f);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] >= x0) {
        EXPECT_NEAR(zero.values[i], g_one(f, grid[i]), 1e-10);
      }
    }
    for (const auto& c : set.curves) {
      EXPECT_NEAR(c.values.back(), 1.0, 1e-12);
      for (double v : c.values) EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(CharacteristicCurves, Errors) {
  const auto grid = uniform_grid(3);
  EXPECT_THROW_KIND(characteristic_curves(family(FamilyId::kRank4), 0.3, grid),
                    ErrorKind::kUnsupported);
  EXPECT_THROW_KIND(characteristic_curves(family(FamilyId::kRank8), 0.3, grid),
                    ErrorKind::kTooManyCurves);
  EXPECT_THROW_KIND(characteristic_curves(family(FamilyId::kRank5), 0.3, grid, 1000),
                    ErrorKind::kTooManyCurves);
}

TEST(CurveMinimum, Rank5Lattice) {
  const std::vector<double> grid = {0.0, find_x0(family(FamilyId::kRank5)), 1.0};
  const auto m = curve_minimum(family(FamilyId::kRank5), 0.3, grid);
  // Frozen from an independent numpy sweep of the same lattice.
  EXPECT_NEAR(m[0], 0.0030106, 5e-7);
  EXPECT_NEAR(m[1], 0.0, 1e-6);
  EXPECT_NEAR(m[2], 1.0, 1e-12);
}

TEST(LowerConvexEnvelope, StraightLine) {
  const auto env = lower_convex_envelope({{0.0, 1.0}, {0.25, 1.5}, {0.5, 2.0}, {1.0, 3.0}});
  EXPECT_EQ(env.xs().size(), 2u);
  EXPECT_NEAR(env(0.75), 2.5, 1e-15);
}

TEST(LowerConvexEnvelope, VShape) {
  const auto env = lower_convex_envelope({{1.0, 1.0}, {0.0, 1.0}, {0.5, 0.0}});
  EXPECT_EQ(env.xs(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(env.ys(), (std::vector<double>{1.0, 0.0, 1.0}));
}

TEST(LowerConvexEnvelope, DuplicatesKeepMinimum) {
  const auto env = lower_convex_envelope({{0.0, 0.0}, {0.5, 2.0}, {0.5, -1.0}, {1.0, 0.0}});
  EXPECT_EQ(env(0.5), -1.0);
}

TEST(LowerConvexEnvelope, Errors) {
  EXPECT_THROW_KIND(lower_convex_envelope({{0.0, 1.0}}), ErrorKind::kDegenerateInput);
  EXPECT_THROW_KIND(lower_convex_envelope({{0.3, 1.0}, {0.3, 2.0}}), ErrorKind::kDegenerateInput);
  const auto env = lower_convex_envelope({{0.0, 0.0}, {1.0, 1.0}});
  EXPECT_THROW_KIND(env(1.5), ErrorKind::kDomain);
}

TEST(LowerConvexEnvelope, RandomPointsConvexAndBelow) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 100; ++i) pts.emplace_back(unit(rng), unit(rng));
    const auto env = lower_convex_envelope(pts);
    for (const auto& [x, y] : pts) EXPECT_LE(env(x), y + 1e-12);
    const auto& xs = env.xs();
    const auto& ys = env.ys();
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      const double left = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
      const double right = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
      EXPECT_GE(right - left, -1e-12);
    }
  }
}

TEST(LowerConvexEnvelope, Rank5CoarseLatticeStaysAboveCurve) {
  const FamilySpec& f = family(FamilyId::kRank5);
  const auto grid = uniform_grid(101);
  const auto minimum = curve_minimum(f, std::numbers::pi / 2, grid);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) pts.emplace_back(grid[i], minimum[i]);
  const auto env = lower_convex_envelope(pts);
  for (double x : grid) EXPECT_GE(env(x), tau3_family(f, x) - 1e-12) << "x=" << x;
}

}  // namespace
}  // namespace tangle3

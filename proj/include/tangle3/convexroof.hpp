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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tangle3/family_spec.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3 {

struct RoofConfig {
  static constexpr int kMaxEnsembleSize = 24;

  int ensemble_size = 0;  // 0 selects 2 * rank(rho)
  int restarts = 32;
  int max_iters = 20000;
  double step_init = 0.5;   // radians
  double step_min = 1e-4;   // radians
  int patience = 200;       // consecutive rejections before the step halves
  std::uint64_t seed = 0;
  int threads = 0;          // 0 selects std::thread::hardware_concurrency()

  void validate() const;
};

// Degree-four homogeneous functional of unnormalized amplitudes, e.g.
// tangle_polynomial. Its convex roof is minimized as sum_i f(psi_i)/|psi_i|².
using HomogeneousObjective = std::function<double(const Amplitudes&)>;

struct RestartSummary {
  int restart = 0;
  double initial = 0.0;
  double final = 0.0;
  int iterations = 0;
  int accepted = 0;
  std::vector<double> trace;  // objective after every accepted move
};

struct RoofResult {
  double value = 0.0;
  Ensemble witness;
  int best_restart = 0;
  int ensemble_size = 0;
  std::vector<RestartSummary> restarts;
};

// Random-restart descent over size-m decompositions of rho. Every
// decomposition is psi_i = sum_k U_ik sqrt(lambda_k)|e_k> for an m x r
// isometry U; moves unitarily mix two members, so feasibility is exact.
// The result is an upper bound on the convex roof and is identical for a
// given config regardless of thread count.
RoofResult minimize_roof(const DensityMatrix& rho, const RoofConfig& cfg,
                         const HomogeneousObjective& objective);

// Three-tangle convex roof.
RoofResult estimate_roof(const DensityMatrix& rho, const RoofConfig& cfg);

// Evenly spaced grid of n >= 2 points including both 0 and 1.
std::vector<double> uniform_grid(std::size_t n);

// {0, step, 2 step, ...} strictly below 2π.
std::vector<double> phase_lattice(double step);

// 0.3 for rank 5, π/2 for ranks 6-8.
double default_phase_step(FamilyId id);

inline constexpr std::size_t kDefaultCurveCap = 250000;

struct Curve {
  std::vector<double> phases;
  std::vector<double> values;
};

struct CurveSet {
  std::vector<double> x_grid;
  std::vector<Curve> curves;
};

// Number of phase vectors on the lattice for this family and step.
std::size_t curve_count(const FamilySpec& f, double phase_step);

// Streams tau3(z_state(f, x, phases)) over x_grid for every lattice phase
// vector, in lexicographic phase order. Throws kTooManyCurves above max_curves.
void for_each_characteristic_curve(
    const FamilySpec& f, double phase_step, std::span<const double> x_grid,
    const std::function<void(std::span<const double> phases, std::span<const double> values)>& visit,
    std::size_t max_curves = kDefaultCurveCap);

CurveSet characteristic_curves(const FamilySpec& f, double phase_step,
                               std::span<const double> x_grid,
                               std::size_t max_curves = kDefaultCurveCap);

// Pointwise minimum over all characteristic curves.
std::vector<double> curve_minimum(const FamilySpec& f, double phase_step,
                                  std::span<const double> x_grid,
                                  std::size_t max_curves = kDefaultCurveCap);

class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double operator()(double x) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Greatest convex function below all points (monotone-chain lower hull).
// Duplicate x values keep their smallest y.
PiecewiseLinear lower_convex_envelope(std::vector<std::pair<double, double>> points);

}  // namespace tangle3

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
#include <vector>

#include "tangle3/family_spec.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3 {

DensityMatrix family_state(const FamilySpec& f, double x);

// g_I(x) = x² + mixed·x(1-x) + quadratic·(1-x)² - root·sqrt(x(1-x)³), the
// zero-phase Z-state tangle (up to sign) for ranks 5-8.
struct GOneCoefficients {
  double mixed;
  double quadratic;
  double root;

  double operator()(double x) const;
  double derivative(double x) const;
};

// Throws kUnsupported for rank 4.
GOneCoefficients g_one_coefficients(const FamilySpec& f);
double g_one(const FamilySpec& f, double x);

// The real expression whose modulus is the zero-phase Z-state tangle: g_I for
// ranks 5-8, the phase-free specialization of the rank-4 closed form otherwise.
double signed_zero_phase_tangle(const FamilySpec& f, double x);

// Largest root in (0,1) of signed_zero_phase_tangle.
double find_x0(const FamilySpec& f);
// Convex-to-concave breakpoint of g_I in (x0, 1).
double find_xstar(const FamilySpec& f);
// Tangent point of the chord from (1,1) to g_I, in (x0, xstar].
double find_x1(const FamilySpec& f);

enum class Region { kZero, kGOne, kGTwo };
const char* to_string(Region region);

// 0 on [0,x0], g_I on [x0,x1], the chord g_II on [x1,1].
struct PiecewiseTangleCurve {
  FamilyId family;
  double x0;
  double x1;
  double xstar;
  GOneCoefficients g_one;
  double g_one_at_x1;

  double g_two(double x) const;
  Region region(double x) const;
  double operator()(double x) const;
};

// Ranks 5-8; computed once per process.
const PiecewiseTangleCurve& tangle_curve(FamilyId id);

// Rank 4 is only established on [0, x0] and throws kOutOfEstablishedRange
// beyond it.
double tau3_family(const FamilySpec& f, double x);

enum class PatternSource { kPrinted, kReordered, kHadamard };
const char* to_string(PatternSource source);

// Eight phase rows, one ±1 entry (phase 0 or π) per background state.
struct SignPattern {
  std::vector<std::vector<int>> rows;
  PatternSource source = PatternSource::kPrinted;
  // Background state j takes printed phase column column_order[j].
  std::vector<std::size_t> column_order;
  // Rows that differ from the printed candidate after correction.
  std::vector<std::size_t> replaced_rows;
};

// The rows as printed, in the printed phase order.
std::vector<std::vector<int>> printed_sign_rows(FamilyId id);

// With an all-ones column prepended, every pair of columns is orthogonal.
bool columns_orthogonal(const std::vector<std::vector<int>>& rows);
// Every row's Z-state has the same tangle as the zero-phase Z-state.
bool members_share_tangle(const FamilySpec& f, const std::vector<std::vector<int>>& rows);

// Accepts the candidate when both checks pass; otherwise tries column
// reorderings of it, then Sylvester-Hadamard columns.
SignPattern validate_sign_pattern(const FamilySpec& f, const std::vector<std::vector<int>>& candidate);
const SignPattern& sign_patterns(const FamilySpec& f);

// Pure-state ensemble of zero average tangle for the family's background mixture.
Ensemble background_decomposition(const FamilySpec& f);

Ensemble optimal_decomposition(const FamilySpec& f, double x);

double average_tangle(const Ensemble& e);

}  // namespace tangle3

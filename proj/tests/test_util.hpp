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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tangle3/error.hpp"
#include "tangle3/qstate.hpp"

namespace tangle3::testing {

#define EXPECT_THROW_KIND(statement, expected_kind)                      \
  do {                                                                   \
    try {                                                                \
      static_cast<void>(statement);                                      \
      ADD_FAILURE() << "expected tangle3::Error from " #statement;       \
    } catch (const ::tangle3::Error& e) {                                \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                    \
    }                                                                    \
  } while (0)

inline PureState random_pure_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PureState psi;
  for (auto& a : psi.amplitudes) a = Complex(normal(rng), normal(rng));
  const double n = std::sqrt(psi.norm_squared());
  for (auto& a : psi.amplitudes) a /= n;
  return psi;
}

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (g + g.adjoint());
}

inline Matrix random_psd(int n, std::mt19937_64& rng) {
  const Matrix h = random_hermitian(n, rng);
  return h * h.adjoint();
}

inline Matrix random_density(int n, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace tangle3::testing

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

#include <Eigen/Dense>

#include "tangle3/qstate.hpp"

namespace tangle3 {

struct Eigensystem {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // orthonormal columns, matching values
};

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);

// Cyclic Jacobi rotations; stops once the off-diagonal Frobenius norm drops
// below 1e-13 (relative to the matrix norm when that exceeds one) or after
// 100 sweeps. Throws kPrecondition when M deviates from Hermitian by > 1e-10.
Eigensystem hermitian_eigensystem(const Matrix& m);

// Principal square root of a PSD matrix. Eigenvalues in [-1e-8, 0) are
// treated as rounding noise and clamped; anything lower throws kNotPsd.
Matrix psd_sqrt(const Matrix& m);

}  // namespace tangle3

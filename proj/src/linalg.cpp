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

#include "tangle3/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tangle3/error.hpp"

namespace tangle3 {
namespace {

constexpr double kOffDiagonalTol = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Zeroes a(p,q) with J = diag-phase * real rotation, applying A <- J^H A J
// and V <- V J.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // J restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Eigensystem hermitian_eigensystem(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::kPrecondition, "eigensystem: matrix must be square and non-empty");
  }
  if (!is_hermitian(m, 1e-10)) {
    throw Error(ErrorKind::kPrecondition, "eigensystem: matrix is not Hermitian");
  }

  const Eigen::Index n = m.rows();
  // Symmetrize so rounding-level asymmetry does not leak into the result.
  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double tol = kOffDiagonalTol * std::max(1.0, a.norm());

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= tol; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return a(l, l).real() > a(r, r).real();
  });

  Eigensystem out{Eigen::VectorXd(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const Eigensystem es = hermitian_eigensystem(m);
  const Eigen::Index n = m.rows();
  Eigen::VectorXd roots(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = es.values(k);
    if (lambda < -1e-8) {
      throw Error(ErrorKind::kNotPsd, "psd_sqrt: eigenvalue " + std::to_string(lambda) +
                                          " is significantly negative");
    }
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

}  // namespace tangle3

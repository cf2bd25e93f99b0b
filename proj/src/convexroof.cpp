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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "tangle3/error.hpp"
#include "tangle3/linalg.hpp"
#include "tangle3/tangle.hpp"

namespace tangle3 {
namespace {

using std::numbers::pi;

struct Search {
  std::vector<Amplitudes> members;
  std::vector<double> contributions;
};

double contribution(const Amplitudes& psi, const HomogeneousObjective& objective) {
  double norm2 = 0.0;
  for (const Complex& a : psi) norm2 += std::norm(a);
  if (norm2 == 0.0) return 0.0;
  return objective(psi) / norm2;
}

double total(const std::vector<double>& contributions) {
  double sum = 0.0;
  for (double c : contributions) sum += c;
  return sum;
}

// Haar-random m x r isometry applied to the scaled eigenvectors.
std::vector<Amplitudes> random_members(const Matrix& scaled, int m, std::mt19937_64& rng) {
  const Eigen::Index r = scaled.cols();
  std::normal_distribution<double> normal;
  Matrix g(m, r);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < r; ++k) g(i, k) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ() * Matrix::Identity(m, r);
  const Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < r; ++k) {
    const double mag = std::abs(rr(k, k));
    if (mag > 0.0) u.col(k) *= rr(k, k) / mag;
  }

  std::vector<Amplitudes> members(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector psi = scaled * u.row(i).transpose();
    for (int a = 0; a < 8; ++a) members[i][a] = psi(a);
  }
  return members;
}

RestartSummary run_search(const Matrix& scaled, const RoofConfig& cfg, int m, int restart,
                          const HomogeneousObjective& objective, Search& out) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Search s;
  s.members = random_members(scaled, m, rng);
  s.contributions.resize(s.members.size());
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    s.contributions[i] = contribution(s.members[i], objective);
  }

  RestartSummary summary;
  summary.restart = restart;
  double current = total(s.contributions);
  summary.initial = current;

  double step = cfg.step_init;
  int rejections = 0;
  int iter = 0;
  for (; iter < cfg.max_iters && step >= cfg.step_min; ++iter) {
    const int i = pick(rng);
    int j = pick(rng);
    while (j == i) j = pick(rng);
    const double theta = (2.0 * unit(rng) - 1.0) * step;
    const double alpha = 2.0 * pi * unit(rng);
    const double c = std::cos(theta);
    const Complex s_phase = std::sin(theta) * std::polar(1.0, alpha);

    Amplitudes new_i;
    Amplitudes new_j;
    for (int a = 0; a < 8; ++a) {
      new_i[a] = c * s.members[i][a] - s_phase * s.members[j][a];
      new_j[a] = std::conj(s_phase) * s.members[i][a] + c * s.members[j][a];
    }
    const double old_ci = s.contributions[i];
    const double old_cj = s.contributions[j];
    s.contributions[i] = contribution(new_i, objective);
    s.contributions[j] = contribution(new_j, objective);
    const double candidate = total(s.contributions);
    if (candidate < current) {
      s.members[i] = new_i;
      s.members[j] = new_j;
      current = candidate;
      summary.trace.push_back(current);
      ++summary.accepted;
      rejections = 0;
    } else {
      s.contributions[i] = old_ci;
      s.contributions[j] = old_cj;
      if (++rejections >= cfg.patience) {
        step *= 0.5;
        rejections = 0;
      }
    }
  }
  summary.iterations = iter;
  summary.final = current;
  out = std::move(s);
  return summary;
}

double evaluate_tangle(const Amplitudes& lead, const Amplitudes& background, double sx, double sq) {
  Amplitudes a;
  for (int i = 0; i < 8; ++i) a[i] = sx * lead[i] + sq * background[i];
  return tangle_polynomial(a);
}

}  // namespace

void RoofConfig::validate() const {
  if (ensemble_size < 0 || ensemble_size > kMaxEnsembleSize) {
    throw Error(ErrorKind::kInfeasibleEnsemble, "ensemble size must be at most 24");
  }
  if (restarts < 1 || max_iters < 1 || patience < 1 || threads < 0) {
    throw Error(ErrorKind::kDomain, "roof config counts must be positive");
  }
  if (!(step_min > 0.0 && step_min < step_init)) {
    throw Error(ErrorKind::kDomain, "roof config needs 0 < step_min < step_init");
  }
}

RoofResult minimize_roof(const DensityMatrix& rho, const RoofConfig& cfg,
                         const HomogeneousObjective& objective) {
  cfg.validate();
  if (rho.dim() != 8) {
    throw Error(ErrorKind::kDimensionMismatch, "convex roof needs a three-qubit density matrix");
  }
  const Eigensystem es = hermitian_eigensystem(rho.entries());
  int rank = 0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > 1e-10) ++rank;
  }
  const int m = cfg.ensemble_size == 0 ? std::min(2 * rank, RoofConfig::kMaxEnsembleSize)
                                       : cfg.ensemble_size;
  if (m < rank || m < 2) {
    throw Error(ErrorKind::kInfeasibleEnsemble,
                "ensemble size " + std::to_string(m) + " is below rank " + std::to_string(rank));
  }

  Matrix scaled(8, rank);
  for (int k = 0; k < rank; ++k) scaled.col(k) = std::sqrt(es.values(k)) * es.vectors.col(k);

  std::vector<RestartSummary> summaries(static_cast<std::size_t>(cfg.restarts));
  std::vector<Search> searches(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < cfg.restarts; r = next++) {
      summaries[r] = run_search(scaled, cfg, m, r, objective, searches[r]);
    }
  };
  const int threads = std::clamp(
      cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency()), 1,
      cfg.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Lexicographic (value, restart) minimum keeps the reduction schedule-free.
  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r) {
    if (summaries[r].final < summaries[best].final) best = r;
  }

  std::vector<EnsembleMember> members;
  for (const Amplitudes& psi : searches[best].members) {
    double norm2 = 0.0;
    for (const Complex& a : psi) norm2 += std::norm(a);
    if (norm2 == 0.0) continue;
    PureState state;
    const double norm = std::sqrt(norm2);
    for (int a = 0; a < 8; ++a) state.amplitudes[a] = psi[a] / norm;
    members.push_back({norm2, state});
  }

  RoofResult result;
  result.value = summaries[best].final;
  result.witness = Ensemble(std::move(members));
  result.best_restart = best;
  result.ensemble_size = m;
  result.restarts = std::move(summaries);
  return result;
}

RoofResult estimate_roof(const DensityMatrix& rho, const RoofConfig& cfg) {
  return minimize_roof(rho, cfg, [](const Amplitudes& a) { return tangle_polynomial(a); });
}

std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kDomain, "grid needs at least 2 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  grid.back() = 1.0;
  return grid;
}

std::vector<double> phase_lattice(double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::kDomain, "phase step must be positive");
  std::vector<double> lattice;
  for (std::size_t k = 0;; ++k) {
    const double phase = static_cast<double>(k) * step;
    if (phase >= 2.0 * pi - 1e-12) break;
    lattice.push_back(phase);
  }
  return lattice;
}

double default_phase_step(FamilyId id) { return id == FamilyId::kRank5 ? 0.3 : pi / 2.0; }

std::size_t curve_count(const FamilySpec& f, double phase_step) {
  const std::size_t per_phase = phase_lattice(phase_step).size();
  std::size_t count = 1;
  for (std::size_t j = 0; j < f.phase_count(); ++j) {
    if (count > std::numeric_limits<std::size_t>::max() / per_phase) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= per_phase;
  }
  return count;
}

void for_each_characteristic_curve(
    const FamilySpec& f, double phase_step, std::span<const double> x_grid,
    const std::function<void(std::span<const double>, std::span<const double>)>& visit,
    std::size_t max_curves) {
  if (f.rank < 5) {
    throw Error(ErrorKind::kUnsupported, "characteristic curves are defined for ranks 5-8");
  }
  const std::vector<double> lattice = phase_lattice(phase_step);
  const std::size_t count = curve_count(f, phase_step);
  if (count > max_curves) {
    throw Error(ErrorKind::kTooManyCurves,
                family_name(f.id) + " at phase step " + std::to_string(phase_step) + " needs " +
                    std::to_string(count) + " curves; cap is " + std::to_string(max_curves));
  }

  std::vector<double> sx(x_grid.size());
  std::vector<double> sq(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] >= 0.0 && x_grid[i] <= 1.0)) {
      throw Error(ErrorKind::kDomain, "x grid values must lie in [0,1]");
    }
    sx[i] = std::sqrt(x_grid[i]);
    sq[i] = std::sqrt(1.0 - x_grid[i]);
  }

  const PureState lead = ghz_state(f.lead);
  std::vector<PureState> background;
  std::vector<double> roots;
  for (const auto& term : f.background) {
    background.push_back(ghz_state(term.label));
    roots.push_back(std::sqrt(term.weight.value()));
  }

  const std::size_t k = f.phase_count();
  std::vector<std::size_t> digits(k, 0);
  std::vector<double> phases(k, 0.0);
  std::vector<double> values(x_grid.size());
  for (std::size_t n = 0; n < count; ++n) {
    Amplitudes bg{};
    for (std::size_t j = 0; j < k; ++j) {
      phases[j] = lattice[digits[j]];
      const Complex coeff = -std::polar(roots[j], phases[j]);
      for (int a = 0; a < 8; ++a) bg[a] += coeff * background[j].amplitudes[a];
    }
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      values[i] = evaluate_tangle(lead.amplitudes, bg, sx[i], sq[i]);
    }
    visit(phases, values);
    // Odometer with the last phase fastest.
    for (std::size_t j = k; j-- > 0;) {
      if (++digits[j] < lattice.size()) break;
      digits[j] = 0;
    }
  }
}

CurveSet characteristic_curves(const FamilySpec& f, double phase_step,
                               std::span<const double> x_grid, std::size_t max_curves) {
  CurveSet set;
  set.x_grid.assign(x_grid.begin(), x_grid.end());
  for_each_characteristic_curve(
      f, phase_step, x_grid,
      [&](std::span<const double> phases, std::span<const double> values) {
        set.curves.push_back({{phases.begin(), phases.end()}, {values.begin(), values.end()}});
      },
      max_curves);
  return set;
}

std::vector<double> curve_minimum(const FamilySpec& f, double phase_step,
                                  std::span<const double> x_grid, std::size_t max_curves) {
  std::vector<double> minimum(x_grid.size(), std::numeric_limits<double>::infinity());
  for_each_characteristic_curve(
      f, phase_step, x_grid,
      [&](std::span<const double>, std::span<const double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) minimum[i] = std::min(minimum[i], values[i]);
      },
      max_curves);
  return minimum;
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw Error(ErrorKind::kDegenerateInput, "piecewise-linear function needs >= 2 vertices");
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) {
    throw Error(ErrorKind::kDomain, "piecewise-linear function evaluated outside its domain");
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end()) return ys_.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + t * (ys_[hi] - ys_[lo]);
}

PiecewiseLinear lower_convex_envelope(std::vector<std::pair<double, double>> points) {
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Error(ErrorKind::kDegenerateInput, "envelope input must be finite");
    }
  }
  std::sort(points.begin(), points.end());
  // Sorted by (x, y): the first of each run of equal x has the smallest y.
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& l, const auto& r) { return l.first == r.first; }),
               points.end());
  if (points.size() < 2) {
    throw Error(ErrorKind::kDegenerateInput, "envelope needs at least 2 distinct x values");
  }

  std::vector<std::pair<double, double>> hull;
  for (const auto& p : points) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const double cross = (a.first - o.first) * (p.second - o.second) -
                           (a.second - o.second) * (p.first - o.first);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [x, y] : hull) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

}  // namespace tangle3

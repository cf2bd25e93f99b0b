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

#include "tangle3/families.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>

#include "tangle3/error.hpp"
#include "tangle3/tangle.hpp"

namespace tangle3 {
namespace {

using std::numbers::pi;

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::kDomain, std::string(what) + ": x must lie in [0,1]");
  }
}

void require_rank5_or_more(const FamilySpec& f, const char* what) {
  if (f.rank < 5) {
    throw Error(ErrorKind::kUnsupported, std::string(what) + " is not defined for rank 4");
  }
}

// Bisection down to adjacent doubles. f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol = 0.0) {
  double f_lo = fn(lo);
  if (f_lo == 0.0) return lo;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= tol) return mid;
    const double f_mid = fn(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
}

double second_difference(const GOneCoefficients& g, double x) {
  constexpr double h = 1e-5;
  return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
}

std::vector<double> phases_from_signs(const std::vector<int>& signs) {
  std::vector<double> phases(signs.size());
  for (std::size_t j = 0; j < signs.size(); ++j) phases[j] = signs[j] > 0 ? 0.0 : pi;
  return phases;
}

std::vector<std::vector<int>> parse_rows(std::initializer_list<const char*> rows) {
  std::vector<std::vector<int>> out;
  for (const char* r : rows) {
    std::vector<int> row;
    for (const char* c = r; *c; ++c) row.push_back(*c == '0' ? 1 : -1);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<int>> sylvester_hadamard8() {
  std::vector<std::vector<int>> h(8, std::vector<int>(8));
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) h[r][c] = (std::popcount(static_cast<unsigned>(r & c)) % 2) ? -1 : 1;
  }
  return h;
}

std::vector<std::vector<int>> select_columns(const std::vector<std::vector<int>>& rows,
                                             const std::vector<std::size_t>& order,
                                             std::size_t count) {
  std::vector<std::vector<int>> out(rows.size(), std::vector<int>(count));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < count; ++j) out[r][j] = rows[r][order[j]];
  }
  return out;
}

bool pattern_valid(const FamilySpec& f, const std::vector<std::vector<int>>& rows) {
  return rows.size() == 8 &&
         std::all_of(rows.begin(), rows.end(),
                     [&](const auto& r) { return r.size() == f.phase_count(); }) &&
         columns_orthogonal(rows) && members_share_tangle(f, rows);
}

void append_z_members(const FamilySpec& f, double mix, double weight_each,
                      std::vector<EnsembleMember>& out) {
  if (!(weight_each > 0.0)) return;
  for (const auto& row : sign_patterns(f).rows) {
    out.push_back({weight_each, z_state({f.id, mix, phases_from_signs(row)})});
  }
}

void append_scaled(const Ensemble& e, double factor, std::vector<EnsembleMember>& out) {
  if (!(factor > 0.0)) return;
  for (const auto& m : e) out.push_back({m.weight * factor, m.state});
}

// Background of f as (previous family, its mixing value), when the background
// is exactly a lower-rank family state.
std::pair<const FamilySpec*, Rational> background_as_family(const FamilySpec& f) {
  const FamilySpec& prev = family(static_cast<FamilyId>(static_cast<int>(f.id) - 1));
  auto weight_of = [&](const GhzLabel& label) -> std::optional<Rational> {
    for (const auto& term : f.background) {
      if (term.label == label) return term.weight;
    }
    return std::nullopt;
  };
  const auto lead_weight = weight_of(prev.lead);
  bool matches = lead_weight.has_value() && f.background.size() == prev.background.size() + 1;
  if (matches) {
    const Rational rest{lead_weight->den - lead_weight->num, lead_weight->den};
    for (const auto& term : prev.background) {
      const auto w = weight_of(term.label);
      const Rational expected{rest.num * term.weight.num, rest.den * term.weight.den};
      if (!w || !(*w == expected)) {
        matches = false;
        break;
      }
    }
  }
  if (!matches) {
    throw Error(ErrorKind::kUnsupported,
                family_name(f.id) + " background is not a lower-rank family state");
  }
  return {&prev, *lead_weight};
}

}  // namespace

DensityMatrix family_state(const FamilySpec& f, double x) {
  check_unit_interval(x, "family_state");
  Matrix rho = Matrix::Zero(8, 8);
  auto add = [&](double w, const GhzLabel& label) {
    const Vector v = ghz_state(label).to_vector();
    rho.noalias() += w * (v * v.adjoint());
  };
  add(x, f.lead);
  for (const auto& term : f.background) add((1.0 - x) * term.weight.value(), term.label);
  return DensityMatrix(std::move(rho));
}

double GOneCoefficients::operator()(double x) const {
  const double q = 1.0 - x;
  return x * x + mixed * x * q + quadratic * q * q - root * std::sqrt(x * q * q * q);
}

double GOneCoefficients::derivative(double x) const {
  const double q = 1.0 - x;
  return 2.0 * x + mixed * (1.0 - 2.0 * x) - 2.0 * quadratic * q -
         root * (1.0 - 4.0 * x) * std::sqrt(q) / (2.0 * std::sqrt(x));
}

GOneCoefficients g_one_coefficients(const FamilySpec& f) {
  const double s3 = std::sqrt(3.0);
  switch (f.id) {
    case FamilyId::kRank5:
      return {-2.0, -2.0 / 25.0, 6.0 * std::sqrt(30.0) / 25.0};
    case FamilyId::kRank6:
      return {6.0 / 11.0, -(27.0 - 24.0 * s3) / 121.0, 24.0 * std::sqrt(11.0) / 121.0};
    case FamilyId::kRank7:
      return {8.0 / 17.0, -(56.0 - 72.0 * s3) / 289.0, 24.0 * std::sqrt(102.0) / 289.0};
    case FamilyId::kRank8:
      return {2.0 / 5.0, -(207.0 - 384.0 * s3) / 1225.0, 128.0 * std::sqrt(105.0) / 1225.0};
    case FamilyId::kRank4:
      break;
  }
  throw Error(ErrorKind::kUnsupported, "g_I is not defined for rank 4");
}

double g_one(const FamilySpec& f, double x) {
  check_unit_interval(x, "g_one");
  return g_one_coefficients(f)(x);
}

double signed_zero_phase_tangle(const FamilySpec& f, double x) {
  if (f.id == FamilyId::kRank4) {
    const double q = 1.0 - x;
    return x * x + q * q / 3.0 + 2.0 * x * q - 2.0 * q * q / 3.0;
  }
  return g_one_coefficients(f)(x);
}

double find_x0(const FamilySpec& f) {
  auto fn = [&](double x) { return signed_zero_phase_tangle(f, x); };
  // Walk down from x = 1, where the value is 1, to the first sign change.
  constexpr int kSteps = 4096;
  double hi = 1.0;
  for (int i = kSteps - 1; i >= 1; --i) {
    const double lo = static_cast<double>(i) / kSteps;
    if (fn(lo) <= 0.0) return bisect(fn, lo, hi);
    hi = lo;
  }
  throw Error(ErrorKind::kNoBreakpoint, family_name(f.id) + ": no vanishing point in (0,1)");
}

double find_xstar(const FamilySpec& f) {
  require_rank5_or_more(f, "find_xstar");
  const GOneCoefficients g = g_one_coefficients(f);
  auto fn = [&](double x) { return second_difference(g, x); };
  const double x0 = find_x0(f);
  constexpr int kSteps = 4096;
  const double start = x0 + 1e-4;
  const double stop = 1.0 - 1e-4;
  double lo = start;
  for (int i = 1; i <= kSteps; ++i) {
    const double hi = start + (stop - start) * i / kSteps;
    if (fn(lo) > 0.0 && fn(hi) <= 0.0) return bisect(fn, lo, hi, 1e-10);
    lo = hi;
  }
  throw Error(ErrorKind::kNoBreakpoint, family_name(f.id) + ": g_I has no convexity breakpoint");
}

double find_x1(const FamilySpec& f) {
  require_rank5_or_more(f, "find_x1");
  const GOneCoefficients g = g_one_coefficients(f);
  // Stationarity of the chord value in x1: (1 - x1) g'(x1) + g(x1) - 1 = 0.
  auto fn = [&](double x) { return (1.0 - x) * g.derivative(x) + g(x) - 1.0; };
  const double lo = find_x0(f);
  const double hi = find_xstar(f);
  if (!(fn(lo) < 0.0 && fn(hi) > 0.0)) {
    throw Error(ErrorKind::kNoBreakpoint, family_name(f.id) + ": tangent condition not bracketed");
  }
  return bisect(fn, lo, hi);
}

const char* to_string(Region region) {
  switch (region) {
    case Region::kZero: return "zero";
    case Region::kGOne: return "gI";
    case Region::kGTwo: return "gII";
  }
  return "?";
}

double PiecewiseTangleCurve::g_two(double x) const {
  return (x - x1) / (1.0 - x1) + (1.0 - x) / (1.0 - x1) * g_one_at_x1;
}

Region PiecewiseTangleCurve::region(double x) const {
  if (x <= x0) return Region::kZero;
  if (x <= x1) return Region::kGOne;
  return Region::kGTwo;
}

double PiecewiseTangleCurve::operator()(double x) const {
  switch (region(x)) {
    case Region::kZero: return 0.0;
    case Region::kGOne: return std::max(0.0, g_one(x));
    case Region::kGTwo: return g_two(x);
  }
  return 0.0;
}

const PiecewiseTangleCurve& tangle_curve(FamilyId id) {
  static const std::array<PiecewiseTangleCurve, 4> kCurves = [] {
    std::array<PiecewiseTangleCurve, 4> curves{};
    for (int i = 0; i < 4; ++i) {
      const FamilySpec& f = family(static_cast<FamilyId>(i + 1));
      PiecewiseTangleCurve& c = curves[i];
      c.family = f.id;
      c.g_one = g_one_coefficients(f);
      c.x0 = find_x0(f);
      c.xstar = find_xstar(f);
      c.x1 = find_x1(f);
      c.g_one_at_x1 = c.g_one(c.x1);
    }
    return curves;
  }();
  if (id == FamilyId::kRank4) {
    throw Error(ErrorKind::kUnsupported, "rank 4 has no piecewise tangle curve");
  }
  return kCurves[static_cast<std::size_t>(id) - 1];
}

double tau3_family(const FamilySpec& f, double x) {
  check_unit_interval(x, "tau3_family");
  if (f.id == FamilyId::kRank4) {
    static const double kX0 = find_x0(f);
    if (x > kX0) {
      throw Error(ErrorKind::kOutOfEstablishedRange,
                  "rank4 three-tangle is only established on [0, (2-sqrt(3))/2]");
    }
    return 0.0;
  }
  return tangle_curve(f.id)(x);
}

const char* to_string(PatternSource source) {
  switch (source) {
    case PatternSource::kPrinted: return "printed";
    case PatternSource::kReordered: return "reordered";
    case PatternSource::kHadamard: return "hadamard";
  }
  return "?";
}

std::vector<std::vector<int>> printed_sign_rows(FamilyId id) {
  switch (id) {
    case FamilyId::kRank4:
      return parse_rows({"000", "001", "010", "011", "100", "101", "110", "111"});
    case FamilyId::kRank5:
      return parse_rows({"0000", "0011", "0101", "0110", "1000", "1011", "1101", "1110"});
    case FamilyId::kRank6:
      return parse_rows({"00000", "01100", "10101", "11001", "10110", "11010", "00011", "01111"});
    case FamilyId::kRank7:
      // Fifth row uses the six phases of the ket; its bra carries seven.
      return parse_rows({"000000", "010111", "100101", "110010", "011001", "001110", "111100",
                         "101011"});
    case FamilyId::kRank8:
      return parse_rows({"0000000", "0001111", "0110011", "0111100", "1010101", "1011010",
                         "1100110", "1101001"});
  }
  return {};
}

bool columns_orthogonal(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) return false;
  const std::size_t cols = rows.front().size();
  auto column = [&](std::size_t c, std::size_t r) { return c == 0 ? 1 : rows[r][c - 1]; };
  for (std::size_t a = 0; a <= cols; ++a) {
    for (std::size_t b = a + 1; b <= cols; ++b) {
      int sum = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) sum += column(a, r) * column(b, r);
      if (sum != 0) return false;
    }
  }
  return true;
}

bool members_share_tangle(const FamilySpec& f, const std::vector<std::vector<int>>& rows) {
  // Tangles are polynomials in sqrt(x), sqrt(1-x); generic sample points suffice.
  static constexpr std::array<double, 3> kSamples = {0.3137, 0.6180, 0.8712};
  for (double x : kSamples) {
    const double reference =
        tangle_polynomial(z_state({f.id, x, std::vector<double>(f.phase_count(), 0.0)}).amplitudes);
    for (const auto& row : rows) {
      const double t = tangle_polynomial(z_state({f.id, x, phases_from_signs(row)}).amplitudes);
      if (std::abs(t - reference) > 1e-12) return false;
    }
  }
  return true;
}

SignPattern validate_sign_pattern(const FamilySpec& f,
                                  const std::vector<std::vector<int>>& candidate) {
  const std::size_t k = f.phase_count();
  std::vector<std::size_t> identity(k);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  const bool shaped = candidate.size() == 8 &&
                      std::all_of(candidate.begin(), candidate.end(),
                                  [&](const auto& r) { return r.size() == k; });
  if (shaped) {
    if (pattern_valid(f, candidate)) {
      return {candidate, PatternSource::kPrinted, identity, {}};
    }
    std::vector<std::size_t> order = identity;
    while (std::next_permutation(order.begin(), order.end())) {
      auto rows = select_columns(candidate, order, k);
      if (pattern_valid(f, rows)) return {std::move(rows), PatternSource::kReordered, order, {}};
    }
  }

  const auto hadamard = sylvester_hadamard8();
  std::vector<std::size_t> order = {1, 2, 3, 4, 5, 6, 7};
  do {
    auto rows = select_columns(hadamard, order, k);
    if (pattern_valid(f, rows)) {
      SignPattern out{std::move(rows), PatternSource::kHadamard, identity, {}};
      for (std::size_t r = 0; r < 8; ++r) {
        if (!shaped || out.rows[r] != candidate[r]) out.replaced_rows.push_back(r);
      }
      return out;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  throw Error(ErrorKind::kUnsupported, family_name(f.id) + ": no valid sign pattern found");
}

const SignPattern& sign_patterns(const FamilySpec& f) {
  static const std::array<SignPattern, 5> kPatterns = [] {
    std::array<SignPattern, 5> out;
    for (FamilyId id : all_family_ids()) {
      out[static_cast<std::size_t>(id)] = validate_sign_pattern(family(id), printed_sign_rows(id));
    }
    return out;
  }();
  return kPatterns[static_cast<std::size_t>(f.id)];
}

Ensemble background_decomposition(const FamilySpec& f) {
  std::vector<EnsembleMember> members;
  if (f.id == FamilyId::kRank4) {
    // Phases (0, π/3, 2π/3) make e^{2iφ} the cube roots of unity, which zero
    // the rank-4 closed form at x = 0; the sign average removes cross terms.
    const std::vector<double> base = {0.0, pi / 3.0, 2.0 * pi / 3.0};
    for (const auto& row : printed_sign_rows(FamilyId::kRank4)) {
      std::vector<double> phases = base;
      for (std::size_t j = 0; j < 3; ++j) phases[j] += row[j] > 0 ? 0.0 : pi;
      members.push_back({1.0 / 8.0, z_state({f.id, 0.0, phases})});
    }
    return Ensemble(std::move(members));
  }
  const auto [prev, mix] = background_as_family(f);
  if (mix.value() > find_x0(*prev)) {
    throw Error(ErrorKind::kUnsupported,
                family_name(f.id) + " background lies outside the zero-tangle region");
  }
  return optimal_decomposition(*prev, mix.value());
}

Ensemble optimal_decomposition(const FamilySpec& f, double x) {
  check_unit_interval(x, "optimal_decomposition");
  std::vector<EnsembleMember> members;

  if (f.id == FamilyId::kRank4) {
    static const double kX0 = find_x0(f);
    if (x > kX0) {
      throw Error(ErrorKind::kOutOfEstablishedRange,
                  "rank4 decomposition is only established on [0, (2-sqrt(3))/2]");
    }
    append_z_members(f, kX0, x / (8.0 * kX0), members);
    append_scaled(background_decomposition(f), (kX0 - x) / kX0, members);
    return Ensemble(std::move(members));
  }

  const PiecewiseTangleCurve& curve = tangle_curve(f.id);
  switch (curve.region(x)) {
    case Region::kZero:
      append_z_members(f, curve.x0, x / (8.0 * curve.x0), members);
      append_scaled(background_decomposition(f), (curve.x0 - x) / curve.x0, members);
      break;
    case Region::kGOne:
      append_z_members(f, x, 1.0 / 8.0, members);
      break;
    case Region::kGTwo: {
      append_z_members(f, curve.x1, (1.0 - x) / (8.0 * (1.0 - curve.x1)), members);
      const double lead_weight = (x - curve.x1) / (1.0 - curve.x1);
      if (lead_weight > 0.0) members.push_back({lead_weight, ghz_state(f.lead)});
      break;
    }
  }
  return Ensemble(std::move(members));
}

double average_tangle(const Ensemble& e) {
  double sum = 0.0;
  for (const auto& m : e) sum += m.weight * tangle_polynomial(m.state.amplitudes);
  return sum;
}

}  // namespace tangle3

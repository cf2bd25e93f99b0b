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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tangle3/qstate.hpp"

namespace tangle3 {

struct Rational {
  std::int64_t num;
  std::int64_t den;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& l, const Rational& r) {
    return l.num * r.den == r.num * l.den;
  }
};

enum class FamilyId { kRank4, kRank5, kRank6, kRank7, kRank8 };

struct BackgroundTerm {
  Rational weight;
  GhzLabel label;
};

// x |lead><lead| + (1 - x) sum_j w_j |b_j><b_j|. The background order fixes
// which phase of a Z-state decorates which basis state.
struct FamilySpec {
  FamilyId id;
  int rank;
  GhzLabel lead;
  std::vector<BackgroundTerm> background;

  std::size_t phase_count() const { return background.size(); }
};

const FamilySpec& family(FamilyId id);
const std::array<FamilyId, 5>& all_family_ids();

// "rank4" ... "rank8".
std::string family_name(FamilyId id);
std::optional<FamilyId> parse_family_id(std::string_view name);

}  // namespace tangle3

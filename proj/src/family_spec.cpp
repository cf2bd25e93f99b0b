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

#include "tangle3/family_spec.hpp"

namespace tangle3 {
namespace {

constexpr GhzSign P = GhzSign::kPlus;
constexpr GhzSign M = GhzSign::kMinus;

std::array<FamilySpec, 5> make_families() {
  return {
      FamilySpec{FamilyId::kRank4, 4, GhzLabel(1, M),
                 {{{1, 3}, GhzLabel(2, P)}, {{1, 3}, GhzLabel(3, P)}, {{1, 3}, GhzLabel(4, P)}}},
      FamilySpec{FamilyId::kRank5, 5, GhzLabel(1, P),
                 {{{1, 10}, GhzLabel(1, M)},
                  {{3, 10}, GhzLabel(2, P)},
                  {{3, 10}, GhzLabel(3, P)},
                  {{3, 10}, GhzLabel(4, P)}}},
      FamilySpec{FamilyId::kRank6, 6, GhzLabel(2, M),
                 {{{1, 11}, GhzLabel(1, P)},
                  {{1, 11}, GhzLabel(1, M)},
                  {{3, 11}, GhzLabel(2, P)},
                  {{3, 11}, GhzLabel(3, P)},
                  {{3, 11}, GhzLabel(4, P)}}},
      FamilySpec{FamilyId::kRank7, 7, GhzLabel(3, M),
                 {{{1, 34}, GhzLabel(2, M)},
                  {{3, 34}, GhzLabel(1, P)},
                  {{3, 34}, GhzLabel(1, M)},
                  {{9, 34}, GhzLabel(2, P)},
                  {{9, 34}, GhzLabel(3, P)},
                  {{9, 34}, GhzLabel(4, P)}}},
      FamilySpec{FamilyId::kRank8, 8, GhzLabel(4, M),
                 {{{1, 35}, GhzLabel(3, M)},
                  {{1, 35}, GhzLabel(2, M)},
                  {{3, 35}, GhzLabel(1, P)},
                  {{3, 35}, GhzLabel(1, M)},
                  {{9, 35}, GhzLabel(2, P)},
                  {{9, 35}, GhzLabel(3, P)},
                  {{9, 35}, GhzLabel(4, P)}}},
  };
}

}  // namespace

const FamilySpec& family(FamilyId id) {
  static const std::array<FamilySpec, 5> kFamilies = make_families();
  return kFamilies[static_cast<std::size_t>(id)];
}

const std::array<FamilyId, 5>& all_family_ids() {
  static constexpr std::array<FamilyId, 5> kIds = {FamilyId::kRank4, FamilyId::kRank5,
                                                   FamilyId::kRank6, FamilyId::kRank7,
                                                   FamilyId::kRank8};
  return kIds;
}

std::string family_name(FamilyId id) {
  return "rank" + std::to_string(static_cast<int>(id) + 4);
}

std::optional<FamilyId> parse_family_id(std::string_view name) {
  for (FamilyId id : all_family_ids()) {
    if (name == family_name(id)) return id;
  }
  return std::nullopt;
}

}  // namespace tangle3

// Copyright 2026 The pricetree Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricetree/random.hpp"
#include "pricetree/tree.hpp"

namespace pricetree {

inline constexpr std::array<int, 6> kCoefficients = {-3, -2, -1, 1, 2, 3};

// Either x_i = c (an edge from the root) or a*x_i + b*x_j = c where x_i is
// the parent endpoint.
struct Formula {
  enum class Kind { kRootValue, kLinear };

  Kind kind = Kind::kRootValue;
  VarIndex i = 1;
  VarIndex j = 0;  // unused for kRootValue
  int a = 1;
  int b = 0;  // unused for kRootValue
  int c = 0;

  static Formula RootValue(VarIndex var, int value) {
    return {Kind::kRootValue, var, 0, 1, 0, value};
  }
  static Formula Linear(VarIndex i, VarIndex j, int a, int b, int c) {
    return {Kind::kLinear, i, j, a, b, c};
  }

  bool is_root() const { return kind == Kind::kRootValue; }
  bool Mentions(VarIndex v) const { return i == v || (!is_root() && j == v); }
  bool SatisfiedBy(const VarDict& vars) const;

  bool operator==(const Formula&) const = default;
};

std::string ToString(const Formula& f);

struct CutSpec {
  int ans_depth = 2;
  int cut_depth = 1;
};

void ValidateCut(const CutSpec& cut);

// Child endpoint of the removed spine edge: x_{ansDepth - cutDepth}.
inline VarIndex CutChild(const CutSpec& cut) { return cut.ans_depth - cut.cut_depth; }

enum class ConditionOrder { kForward, kBackward, kRandom };

std::string_view ToString(ConditionOrder order);
std::optional<ConditionOrder> ParseConditionOrder(std::string_view name);

// Removes the spine edge (x_{k-1}, x_k), k = ansDepth - cutDepth, x_0 = root.
std::vector<Edge> ApplyCut(const std::vector<Edge>& edges, const CutSpec& cut);

// Index of the edge ApplyCut would remove.
size_t CutPosition(const std::vector<Edge>& edges, const CutSpec& cut);

// Root edges become RootValue and consume no draws. Variable edges draw a then
// b, each as an index into kCoefficients.
Formula SampleFormula(const Edge& edge, const VarDict& vars, RandomSource& rng);

// Permutation applied by OrderFormulas: result[k] = input[perm[k]].
std::vector<size_t> OrderPermutation(size_t n, ConditionOrder order, RandomSource& rng);

std::vector<Formula> OrderFormulas(const std::vector<Formula>& formulas, ConditionOrder order,
                                   RandomSource& rng);

}  // namespace pricetree

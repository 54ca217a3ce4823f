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

#include "pricetree/formula.hpp"

#include <algorithm>
#include <numeric>

#include "pricetree/error.hpp"

namespace pricetree {

bool Formula::SatisfiedBy(const VarDict& vars) const {
  if (is_root()) return vars.at(i) == c;
  return a * vars.at(i) + b * vars.at(j) == c;
}

std::string ToString(const Formula& f) {
  if (f.is_root()) return "x" + std::to_string(f.i) + " = " + std::to_string(f.c);
  return std::to_string(f.a) + "*x" + std::to_string(f.i) + (f.b < 0 ? " - " : " + ") +
         std::to_string(f.b < 0 ? -f.b : f.b) + "*x" + std::to_string(f.j) + " = " +
         std::to_string(f.c);
}

void ValidateCut(const CutSpec& cut) {
  if (cut.cut_depth < 1 || cut.cut_depth >= cut.ans_depth) {
    Fail(ErrorCode::kInvalidConfig, "cutDepth must satisfy 1 <= cutDepth < ansDepth (cutDepth=" +
                                        std::to_string(cut.cut_depth) +
                                        ", ansDepth=" + std::to_string(cut.ans_depth) + ")");
  }
}

std::string_view ToString(ConditionOrder order) {
  switch (order) {
    case ConditionOrder::kForward: return "forward";
    case ConditionOrder::kBackward: return "backward";
    case ConditionOrder::kRandom: return "random";
  }
  return "?";
}

std::optional<ConditionOrder> ParseConditionOrder(std::string_view name) {
  if (name == "forward") return ConditionOrder::kForward;
  if (name == "backward") return ConditionOrder::kBackward;
  if (name == "random") return ConditionOrder::kRandom;
  return std::nullopt;
}

size_t CutPosition(const std::vector<Edge>& edges, const CutSpec& cut) {
  ValidateCut(cut);
  const VarIndex child = CutChild(cut);
  const Edge target{child - 1, child};
  for (size_t k = 0; k < edges.size(); ++k) {
    if (edges[k] == target) return k;
  }
  Fail(ErrorCode::kInvalidConfig, "cut edge (x" + std::to_string(child - 1) + ", x" +
                                      std::to_string(child) + ") not in edge list");
}

std::vector<Edge> ApplyCut(const std::vector<Edge>& edges, const CutSpec& cut) {
  const size_t pos = CutPosition(edges, cut);
  std::vector<Edge> out;
  out.reserve(edges.size() - 1);
  for (size_t k = 0; k < edges.size(); ++k) {
    if (k != pos) out.push_back(edges[k]);
  }
  return out;
}

Formula SampleFormula(const Edge& edge, const VarDict& vars, RandomSource& rng) {
  if (edge.parent == kRoot) return Formula::RootValue(edge.child, vars.at(edge.child));
  const int a = kCoefficients[static_cast<size_t>(rng.UniformInt(0, kCoefficients.size() - 1))];
  const int b = kCoefficients[static_cast<size_t>(rng.UniformInt(0, kCoefficients.size() - 1))];
  return Formula::Linear(edge.parent, edge.child, a, b,
                         a * vars.at(edge.parent) + b * vars.at(edge.child));
}

std::vector<size_t> OrderPermutation(size_t n, ConditionOrder order, RandomSource& rng) {
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  switch (order) {
    case ConditionOrder::kForward:
      break;
    case ConditionOrder::kBackward:
      std::reverse(perm.begin(), perm.end());
      break;
    case ConditionOrder::kRandom:
      Shuffle(std::span<size_t>(perm), rng);
      break;
  }
  return perm;
}

std::vector<Formula> OrderFormulas(const std::vector<Formula>& formulas, ConditionOrder order,
                                   RandomSource& rng) {
  std::vector<Formula> out;
  out.reserve(formulas.size());
  for (size_t k : OrderPermutation(formulas.size(), order, rng)) out.push_back(formulas[k]);
  return out;
}

}  // namespace pricetree

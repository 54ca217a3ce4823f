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

#include "pricetree/tree.hpp"

#include <queue>
#include <string>

#include "pricetree/error.hpp"

namespace pricetree {

Tree::Tree(int ans_depth, std::vector<VarIndex> parents)
    : ans_depth_(ans_depth), parents_(std::move(parents)) {
  const int n = num_vars();
  if (ans_depth_ < 1 || ans_depth_ > n) {
    Fail(ErrorCode::kInvalidConfig, "tree: ansDepth out of range");
  }
  for (VarIndex v = 1; v <= n; ++v) {
    const VarIndex p = parent(v);
    const bool spine = v <= ans_depth_;
    if (spine ? p != v - 1 : (p < 0 || p >= v)) {
      Fail(ErrorCode::kInvalidConfig, "tree: bad parent for x" + std::to_string(v));
    }
  }
}

std::vector<VarIndex> Tree::children(VarIndex node) const {
  std::vector<VarIndex> out;
  for (VarIndex v = 1; v <= num_vars(); ++v) {
    if (parent(v) == node) out.push_back(v);
  }
  return out;
}

VarDict SampleVarValues(int num_vars, RandomSource& rng) {
  if (num_vars < 2) {
    Fail(ErrorCode::kInvalidConfig, "numVars must be >= 2, got " + std::to_string(num_vars));
  }
  std::vector<int> values;
  values.reserve(static_cast<size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) {
    values.push_back(static_cast<int>(rng.UniformInt(kMinPrice, kMaxPrice)));
  }
  return VarDict(std::move(values));
}

Tree BuildTree(int num_vars, int ans_depth, RandomSource& rng, TreeOptions options) {
  if (ans_depth < 2) {
    Fail(ErrorCode::kInvalidConfig, "ansDepth must be >= 2, got " + std::to_string(ans_depth));
  }
  if (num_vars < ans_depth) {
    Fail(ErrorCode::kInvalidConfig, "numVars (" + std::to_string(num_vars) +
                                        ") must be >= ansDepth (" + std::to_string(ans_depth) +
                                        ")");
  }
  std::vector<VarIndex> parents(static_cast<size_t>(num_vars));
  for (VarIndex v = 1; v <= ans_depth; ++v) parents[static_cast<size_t>(v - 1)] = v - 1;
  const int lo = options.root_attachment ? 0 : 1;
  for (VarIndex v = ans_depth + 1; v <= num_vars; ++v) {
    parents[static_cast<size_t>(v - 1)] = static_cast<VarIndex>(rng.UniformInt(lo, v - 1));
  }
  return Tree(ans_depth, std::move(parents));
}

std::vector<Edge> BfsEdges(const Tree& tree) {
  std::vector<std::vector<VarIndex>> kids(static_cast<size_t>(tree.num_vars() + 1));
  for (VarIndex v = 1; v <= tree.num_vars(); ++v) {
    kids[static_cast<size_t>(tree.parent(v))].push_back(v);  // ascending by construction
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(tree.num_vars()));
  std::queue<VarIndex> queue;
  queue.push(kRoot);
  while (!queue.empty()) {
    const VarIndex node = queue.front();
    queue.pop();
    for (VarIndex child : kids[static_cast<size_t>(node)]) {
      edges.push_back({node, child});
      queue.push(child);
    }
  }
  return edges;
}

}  // namespace pricetree

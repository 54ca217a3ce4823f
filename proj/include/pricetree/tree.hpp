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

#include <vector>

#include "pricetree/random.hpp"

namespace pricetree {

// Variables are numbered 1..num_vars. Node 0 is the reserved root.
using VarIndex = int;
inline constexpr VarIndex kRoot = 0;

inline constexpr int kMinPrice = 5;
inline constexpr int kMaxPrice = 15;

// Hidden unit prices, whole dollars.
class VarDict {
 public:
  VarDict() = default;
  explicit VarDict(std::vector<int> values) : values_(std::move(values)) {}

  int num_vars() const { return static_cast<int>(values_.size()); }
  int at(VarIndex v) const { return values_.at(static_cast<size_t>(v - 1)); }
  const std::vector<int>& values() const { return values_; }

  bool operator==(const VarDict&) const = default;

 private:
  std::vector<int> values_;
};

struct Edge {
  VarIndex parent = kRoot;
  VarIndex child = 1;

  bool operator==(const Edge&) const = default;
};

// Rooted tree over the root plus x_1..x_numVars. The spine
// root -> x_1 -> ... -> x_ansDepth ends at the questioned variable.
class Tree {
 public:
  Tree(int ans_depth, std::vector<VarIndex> parents);

  int num_vars() const { return static_cast<int>(parents_.size()); }
  int ans_depth() const { return ans_depth_; }
  VarIndex questioned() const { return ans_depth_; }
  VarIndex parent(VarIndex v) const { return parents_.at(static_cast<size_t>(v - 1)); }

  // Children of `node` in ascending index order.
  std::vector<VarIndex> children(VarIndex node) const;

  bool operator==(const Tree&) const = default;

 private:
  int ans_depth_;
  std::vector<VarIndex> parents_;  // parents_[v-1] = parent of x_v
};

struct TreeOptions {
  // Whether extra nodes may hang directly off the root.
  bool root_attachment = true;
};

// One uniform draw in [5, 15] per variable, x_1 first.
VarDict SampleVarValues(int num_vars, RandomSource& rng);

// Builds the spine, then attaches each extra node x_i (i > ans_depth) to a
// uniformly chosen earlier node. The draw for x_i is over [0, i-1] with 0
// meaning root, or [1, i-1] when root attachment is disabled.
Tree BuildTree(int num_vars, int ans_depth, RandomSource& rng, TreeOptions options = {});

// Breadth-first edge list from the root, siblings in ascending index order.
std::vector<Edge> BfsEdges(const Tree& tree);

}  // namespace pricetree

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

#include "pricetree/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "pricetree/error.hpp"

namespace pricetree {
namespace {

int MaxIndex(const std::vector<Formula>& formulas, VarIndex target) {
  int n = target;
  for (const Formula& f : formulas) {
    n = std::max(n, f.i);
    if (!f.is_root()) n = std::max(n, f.j);
  }
  return n;
}

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(size_t x, size_t y) { parent_[Find(x)] = Find(y); }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

std::string ToString(const Determination& d) {
  switch (d.verdict) {
    case Determination::Verdict::kUnique: return "Unique(" + d.value.str() + ")";
    case Determination::Verdict::kUnderdetermined: return "Underdetermined";
    case Determination::Verdict::kInconsistent: return "Inconsistent";
  }
  return "?";
}

Determination SolveExact(const std::vector<Formula>& formulas, VarIndex target) {
  const int n = MaxIndex(formulas, target);
  const size_t cols = static_cast<size_t>(n);  // column v-1 holds x_v; column n is the rhs
  std::vector<std::vector<Rational>> m;
  m.reserve(formulas.size());
  for (const Formula& f : formulas) {
    std::vector<Rational> row(cols + 1, Rational(0));
    row[static_cast<size_t>(f.i - 1)] += f.a;
    if (!f.is_root()) row[static_cast<size_t>(f.j - 1)] += f.b;
    row[cols] = f.c;
    m.push_back(std::move(row));
  }

  std::vector<int> pivot_row_of(cols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < m.size(); ++col) {
    size_t p = rank;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const Rational inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (size_t k = col; k <= cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    pivot_row_of[col] = static_cast<int>(rank);
    ++rank;
  }

  for (size_t r = rank; r < m.size(); ++r) {
    if (m[r][cols] != 0) return Determination::Inconsistent();
  }
  const size_t tcol = static_cast<size_t>(target - 1);
  const int prow = pivot_row_of[tcol];
  if (prow < 0) return Determination::Underdetermined();
  const auto& row = m[static_cast<size_t>(prow)];
  for (size_t k = 0; k < cols; ++k) {
    if (k != tcol && pivot_row_of[k] < 0 && row[k] != 0) return Determination::Underdetermined();
  }
  return Determination::Unique(row[cols]);
}

Rational SolveByPath(const std::vector<Formula>& formulas, VarIndex target) {
  std::map<VarIndex, Rational> known;
  auto lookup = [&](VarIndex v) -> const Rational* {
    auto it = known.find(v);
    return it == known.end() ? nullptr : &it->second;
  };
  for (size_t k = 0; k < formulas.size(); ++k) {
    const Formula& f = formulas[k];
    if (f.is_root()) {
      if (const Rational* v = lookup(f.i); v && *v != f.c) {
        Fail(ErrorCode::kCertification, "formula " + std::to_string(k) + " contradicts x" +
                                            std::to_string(f.i));
      }
      known.emplace(f.i, Rational(f.c));
      continue;
    }
    const Rational* vi = lookup(f.i);
    const Rational* vj = lookup(f.j);
    if (vi && vj) {
      if (f.a * *vi + f.b * *vj != f.c) {
        Fail(ErrorCode::kCertification, "formula " + std::to_string(k) + " is inconsistent");
      }
    } else if (vi) {
      known.emplace(f.j, (f.c - f.a * *vi) / f.b);
    } else if (vj) {
      known.emplace(f.i, (f.c - f.b * *vj) / f.a);
    } else {
      Fail(ErrorCode::kNotForwardSolvable, "formula " + std::to_string(k) + " (" + ToString(f) +
                                               ") has two unknowns");
    }
  }
  const Rational* v = lookup(target);
  if (!v) {
    Fail(ErrorCode::kNotForwardSolvable, "x" + std::to_string(target) + " is never resolved");
  }
  return *v;
}

std::vector<Formula> ForwardOrder(const std::vector<Formula>& formulas) {
  const int n = MaxIndex(formulas, 1);
  // out_edges[node] = (child, formula position)
  std::vector<std::vector<std::pair<VarIndex, size_t>>> out_edges(static_cast<size_t>(n + 1));
  for (size_t k = 0; k < formulas.size(); ++k) {
    const Formula& f = formulas[k];
    if (f.is_root()) {
      out_edges[0].emplace_back(f.i, k);
    } else {
      out_edges[static_cast<size_t>(f.i)].emplace_back(f.j, k);
    }
  }
  for (auto& e : out_edges) std::stable_sort(e.begin(), e.end());

  std::vector<Formula> out;
  std::vector<bool> used(formulas.size(), false);
  std::vector<bool> seen(static_cast<size_t>(n + 1), false);
  std::queue<VarIndex> queue;
  queue.push(kRoot);
  seen[0] = true;
  while (!queue.empty()) {
    const VarIndex node = queue.front();
    queue.pop();
    for (const auto& [child, k] : out_edges[static_cast<size_t>(node)]) {
      out.push_back(formulas[k]);
      used[k] = true;
      if (!seen[static_cast<size_t>(child)]) {
        seen[static_cast<size_t>(child)] = true;
        queue.push(child);
      }
    }
  }
  for (size_t k = 0; k < formulas.size(); ++k) {
    if (!used[k]) out.push_back(formulas[k]);
  }
  return out;
}

ComponentStats TargetComponent(const std::vector<Formula>& formulas, VarIndex target) {
  const int n = MaxIndex(formulas, target);
  DisjointSets sets(static_cast<size_t>(n + 1));
  std::vector<bool> mentioned(static_cast<size_t>(n + 1), false);
  mentioned[static_cast<size_t>(target)] = true;
  for (const Formula& f : formulas) {
    mentioned[static_cast<size_t>(f.i)] = true;
    if (f.is_root()) continue;
    mentioned[static_cast<size_t>(f.j)] = true;
    sets.Union(static_cast<size_t>(f.i), static_cast<size_t>(f.j));
  }
  ComponentStats stats;
  const size_t root = sets.Find(static_cast<size_t>(target));
  for (VarIndex v = 1; v <= n; ++v) {
    if (mentioned[static_cast<size_t>(v)] && sets.Find(static_cast<size_t>(v)) == root) {
      stats.members.push_back(v);
    }
  }
  stats.variables = static_cast<int>(stats.members.size());
  for (const Formula& f : formulas) {
    if (sets.Find(static_cast<size_t>(f.i)) == root) ++stats.equations;
  }
  return stats;
}

VerificationReport VerifyLabel(const std::vector<Formula>& formulas, VarIndex target,
                               std::optional<int> gold_answer) {
  VerificationReport report;
  report.target = target;
  report.determination = SolveExact(formulas, target);
  const ComponentStats comp = TargetComponent(formulas, target);
  report.component_size = comp.variables;
  report.equation_count = comp.equations;

  auto fail = [&](std::string why) {
    report.certified = false;
    report.failure = std::move(why);
    return report;
  };

  if (gold_answer) {
    if (report.determination != Determination::Unique(Rational(*gold_answer))) {
      return fail("expected Unique(" + std::to_string(*gold_answer) + "), oracle says " +
                  ToString(report.determination));
    }
    if (*gold_answer < kMinPrice || *gold_answer > kMaxPrice) {
      return fail("gold answer " + std::to_string(*gold_answer) + " outside [5, 15]");
    }
    try {
      report.path_solver_agrees = SolveByPath(ForwardOrder(formulas), target) == *gold_answer;
    } catch (const Error&) {
      report.path_solver_agrees = false;
    }
    if (!*report.path_solver_agrees) return fail("path solver disagrees with exact solver");
  } else {
    if (report.determination.verdict != Determination::Verdict::kUnderdetermined) {
      return fail("expected Underdetermined, oracle says " + ToString(report.determination));
    }
    if (report.equation_count != report.component_size - 1) {
      return fail("target component has " + std::to_string(report.component_size) +
                  " variables and " + std::to_string(report.equation_count) + " formulas");
    }
    for (const Formula& f : formulas) {
      if (f.a == 0 || (!f.is_root() && f.b == 0)) return fail("zero coefficient in " + ToString(f));
    }
  }
  report.certified = true;
  return report;
}

}  // namespace pricetree

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

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pricetree/formula.hpp"

namespace pricetree {

using Rational = boost::multiprecision::cpp_rational;

// Oracle verdict for one target variable.
struct Determination {
  enum class Verdict { kUnique, kUnderdetermined, kInconsistent };

  Verdict verdict = Verdict::kUnderdetermined;
  Rational value;  // meaningful only for kUnique

  static Determination Unique(Rational v) { return {Verdict::kUnique, std::move(v)}; }
  static Determination Underdetermined() { return {Verdict::kUnderdetermined, Rational(0)}; }
  static Determination Inconsistent() { return {Verdict::kInconsistent, Rational(0)}; }

  bool is_unique() const { return verdict == Verdict::kUnique; }

  bool operator==(const Determination& o) const {
    return verdict == o.verdict && (verdict != Verdict::kUnique || value == o.value);
  }
};

std::string ToString(const Determination& d);

// Gauss-Jordan elimination over exact rationals on the whole system. The
// target is Unique iff its column is a pivot whose row has no entries in free
// columns. Variables that appear in no formula are free.
Determination SolveExact(const std::vector<Formula>& formulas, VarIndex target);

// Single left-to-right substitution pass. Each formula must introduce at most
// one unknown; otherwise throws Error(kNotForwardSolvable). A formula whose
// variables are all known must agree with them.
Rational SolveByPath(const std::vector<Formula>& formulas, VarIndex target);

// Reorders formulas into breadth-first order of the tree they describe
// (Linear(i, j) read as edge i -> j, RootValue(i) as root -> i), siblings in
// ascending index. Formulas not reachable from the root are appended in their
// original relative order.
std::vector<Formula> ForwardOrder(const std::vector<Formula>& formulas);

struct ComponentStats {
  int variables = 0;  // variables connected to the target through formulas
  int equations = 0;  // formulas touching those variables
  std::vector<VarIndex> members;  // ascending
};

// Union-find over formula incidence. Root values do not join components.
ComponentStats TargetComponent(const std::vector<Formula>& formulas, VarIndex target);

struct VerificationReport {
  VarIndex target = 0;
  Determination determination;
  int component_size = 0;
  int equation_count = 0;
  std::optional<bool> path_solver_agrees;
  bool certified = false;
  std::string failure;  // empty when certified
};

// Expected label of a problem: a gold value for answerable instances,
// nullopt for unanswerable ones.
VerificationReport VerifyLabel(const std::vector<Formula>& formulas, VarIndex target,
                               std::optional<int> gold_answer);

}  // namespace pricetree

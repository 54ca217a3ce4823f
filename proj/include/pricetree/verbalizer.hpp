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
#include <string_view>
#include <vector>

#include "pricetree/formula.hpp"
#include "pricetree/oracle.hpp"
#include "pricetree/random.hpp"

namespace pricetree {

struct Dish {
  std::string singular;
  std::string plural;

  bool operator==(const Dish&) const = default;
};

struct Vocabulary {
  std::vector<Dish> dishes;
  std::vector<std::string> restaurants;

  static Vocabulary Default();

  // One entry per line. Dish lines are "singular|plural"; a missing plural
  // defaults to singular + "s". Blank lines and lines starting with '#' are
  // skipped.
  static std::vector<Dish> ParseDishes(std::string_view text);
  static std::vector<std::string> ParseRestaurants(std::string_view text);
  static Vocabulary Load(const std::string& dish_path, const std::string& restaurant_path);
};

struct ItemName {
  Dish dish;
  std::optional<std::string> restaurant;

  // "burger" or "burger at Urban Plate".
  std::string Display() const;
  // "a burger at Urban Plate" for n == 1, "3 burgers at Urban Plate" otherwise.
  std::string Quantity(int n) const;

  bool operator==(const ItemName&) const = default;
};

// "a" or "an" for the given word.
std::string_view Article(std::string_view word);

class ItemMap {
 public:
  ItemMap() = default;
  ItemMap(std::vector<ItemName> items, bool composite);

  const ItemName& at(VarIndex v) const { return items_.at(static_cast<size_t>(v - 1)); }
  int size() const { return static_cast<int>(items_.size()); }
  bool composite() const { return composite_; }
  const std::vector<ItemName>& items() const { return items_; }

  bool operator==(const ItemMap&) const = default;

 private:
  std::vector<ItemName> items_;
  bool composite_ = false;
};

// Uniform injective sampling of display forms via a partial Fisher-Yates
// pass over the candidate list (dishes, or dish x restaurant pairs in
// dish-major order). Draw k is over [k, candidates - 1].
ItemMap AssignItems(int num_vars, bool composite, const Vocabulary& vocab, RandomSource& rng);

// The sentence shapes a formula can take.
enum class TemplateCase {
  kRootValue,   // x = c
  kSum,         // p*x + q*y = c, p, q > 0
  kSamePrice,   // p*x - q*y = 0
  kDifference,  // p*x - q*y = c, c > 0, x the positively weighted variable
  kReversedDifference,  // p*x - q*y = c, c < 0
};

TemplateCase ClassifyTemplate(const Formula& f);

// Which phrasing a difference sentence uses. The coin is drawn as 0 or 1.
enum class DifferencePhrasing { kMoreThan = 0, kLessThan = 1 };

struct RenderedFormula {
  std::string sentence;  // capitalized, no terminal period
  std::optional<DifferencePhrasing> phrasing;
};

// Deterministic rendering; `phrasing` is required for difference cases.
RenderedFormula RenderFormula(const Formula& f, const ItemMap& items,
                              std::optional<DifferencePhrasing> phrasing);

// Draws one coin from `rng` for difference cases and none otherwise.
RenderedFormula RenderFormula(const Formula& f, const ItemMap& items, RandomSource& rng);

enum class QuestionPhrasing { kHowMuch, kPriceOf };

std::string_view ToString(QuestionPhrasing p);
std::optional<QuestionPhrasing> ParseQuestionPhrasing(std::string_view name);

std::string RenderQuestion(const ItemMap& items, VarIndex questioned,
                           QuestionPhrasing phrasing = QuestionPhrasing::kHowMuch);

// Worked solution. Answerable problems walk the root-to-target path; the
// unanswerable narrative lists what is known about the target's component.
// `sentences` are the condition sentences parallel to `formulas`. Throws
// Error(kInternal) when the verdict does not match `answerable`.
std::string RenderGoldSolution(const std::vector<Formula>& formulas,
                               const std::vector<std::string>& sentences, const ItemMap& items,
                               VarIndex questioned, bool answerable,
                               const Determination& verdict);

}  // namespace pricetree

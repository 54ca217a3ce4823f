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

#include "pricetree/verbalizer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "pricetree/error.hpp"

namespace pricetree {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open vocabulary file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string Decapitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

std::string Dollars(int amount) {
  return std::to_string(amount) + (amount == 1 ? " dollar" : " dollars");
}

std::string_view Verb(int quantity) { return quantity == 1 ? "costs" : "cost"; }

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (size_t k = 0; k < names.size(); ++k) {
    if (k > 0) out += (k + 1 == names.size()) ? " and " : ", ";
    out += names[k];
  }
  return out;
}

}  // namespace

Vocabulary Vocabulary::Default() {
  Vocabulary v;
  v.dishes = {
      {"burger", "burgers"},
      {"scrambled egg", "scrambled eggs"},
      {"BLT sandwich", "BLT sandwiches"},
      {"pie", "pies"},
      {"Greek salad", "Greek salads"},
      {"piece of cheese cake", "pieces of cheese cake"},
      {"fruit tart", "fruit tarts"},
      {"lasagna", "lasagnas"},
      {"pizza", "pizzas"},
      // Beyond the nine above so simple-name problems can reach 16 variables.
      {"taco", "tacos"},
      {"bagel", "bagels"},
      {"pancake", "pancakes"},
      {"hot dog", "hot dogs"},
      {"omelette", "omelettes"},
      {"waffle", "waffles"},
      {"bowl of ramen", "bowls of ramen"},
  };
  v.restaurants = {"Urban Plate", "Taste Good Cuisine", "Texas BBQ", "Bistro Nice",
                   "Mike's Place"};
  return v;
}

std::vector<Dish> Vocabulary::ParseDishes(std::string_view text) {
  std::vector<Dish> dishes;
  for (const std::string& line : Lines(text)) {
    const size_t bar = line.find('|');
    Dish d;
    d.singular = Trim(std::string_view(line).substr(0, bar));
    d.plural = bar == std::string::npos ? d.singular + "s"
                                        : Trim(std::string_view(line).substr(bar + 1));
    if (d.singular.empty() || d.plural.empty()) {
      Fail(ErrorCode::kParse, "bad dish entry: '" + line + "'");
    }
    dishes.push_back(std::move(d));
  }
  return dishes;
}

std::vector<std::string> Vocabulary::ParseRestaurants(std::string_view text) {
  return Lines(text);
}

Vocabulary Vocabulary::Load(const std::string& dish_path, const std::string& restaurant_path) {
  Vocabulary v = Default();
  if (!dish_path.empty()) v.dishes = ParseDishes(ReadFile(dish_path));
  if (!restaurant_path.empty()) v.restaurants = ParseRestaurants(ReadFile(restaurant_path));
  return v;
}

std::string_view Article(std::string_view word) {
  if (word.empty()) return "a";
  switch (std::tolower(static_cast<unsigned char>(word.front()))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

std::string ItemName::Display() const {
  return restaurant ? dish.singular + " at " + *restaurant : dish.singular;
}

std::string ItemName::Quantity(int n) const {
  std::string out = n == 1 ? std::string(Article(dish.singular)) + " " + dish.singular
                           : std::to_string(n) + " " + dish.plural;
  if (restaurant) out += " at " + *restaurant;
  return out;
}

ItemMap::ItemMap(std::vector<ItemName> items, bool composite)
    : items_(std::move(items)), composite_(composite) {
  std::set<std::string> seen;
  for (const ItemName& item : items_) {
    if (item.restaurant.has_value() != composite_) {
      Fail(ErrorCode::kInvalidConfig, "item '" + item.Display() + "' does not match name mode");
    }
    if (!seen.insert(item.Display()).second) {
      Fail(ErrorCode::kInvalidConfig, "duplicate item name '" + item.Display() + "'");
    }
  }
}

ItemMap AssignItems(int num_vars, bool composite, const Vocabulary& vocab, RandomSource& rng) {
  std::vector<ItemName> candidates;
  if (composite) {
    for (const Dish& d : vocab.dishes) {
      for (const std::string& r : vocab.restaurants) candidates.push_back({d, r});
    }
  } else {
    for (const Dish& d : vocab.dishes) candidates.push_back({d, std::nullopt});
  }
  if (static_cast<int>(candidates.size()) < num_vars) {
    Fail(ErrorCode::kInvalidConfig,
         "vocabulary too small: need " + std::to_string(num_vars) + " distinct " +
             (composite ? "dish/restaurant pairs" : "dishes") + ", have " +
             std::to_string(candidates.size()));
  }
  const auto n = static_cast<int64_t>(candidates.size());
  for (int64_t k = 0; k < num_vars; ++k) {
    const auto j = rng.UniformInt(k, n - 1);
    std::swap(candidates[static_cast<size_t>(k)], candidates[static_cast<size_t>(j)]);
  }
  candidates.resize(static_cast<size_t>(num_vars));
  return ItemMap(std::move(candidates), composite);
}

TemplateCase ClassifyTemplate(const Formula& f) {
  if (f.is_root()) return TemplateCase::kRootValue;
  if ((f.a > 0) == (f.b > 0)) return TemplateCase::kSum;
  if (f.c == 0) return TemplateCase::kSamePrice;
  return f.c > 0 ? TemplateCase::kDifference : TemplateCase::kReversedDifference;
}

RenderedFormula RenderFormula(const Formula& f, const ItemMap& items,
                              std::optional<DifferencePhrasing> phrasing) {
  if (f.is_root()) {
    return {Capitalize(items.at(f.i).Quantity(1) + " costs " + Dollars(f.c)), std::nullopt};
  }
  const ItemName& item_i = items.at(f.i);
  const ItemName& item_j = items.at(f.j);
  switch (ClassifyTemplate(f)) {
    case TemplateCase::kSum: {
      const int sign = f.a > 0 ? 1 : -1;
      return {Capitalize(item_i.Quantity(sign * f.a) + " and " + item_j.Quantity(sign * f.b) +
                         " cost " + Dollars(sign * f.c)),
              std::nullopt};
    }
    case TemplateCase::kSamePrice:
      return {"The price of " + item_i.Quantity(std::abs(f.a)) + " is the same as the price of " +
                  item_j.Quantity(std::abs(f.b)),
              std::nullopt};
    case TemplateCase::kDifference:
    case TemplateCase::kReversedDifference: {
      if (!phrasing) Fail(ErrorCode::kInternal, "difference sentence needs a phrasing choice");
      // Rewrite as big_q * big - small_q * small = diff with diff > 0.
      const bool i_positive = f.a > 0;
      const ItemName* big = i_positive ? &item_i : &item_j;
      const ItemName* small = i_positive ? &item_j : &item_i;
      int big_q = i_positive ? f.a : f.b;
      int small_q = i_positive ? -f.b : -f.a;
      int diff = f.c;
      if (diff < 0) {
        std::swap(big, small);
        std::swap(big_q, small_q);
        diff = -diff;
      }
      std::string s = *phrasing == DifferencePhrasing::kMoreThan
                          ? big->Quantity(big_q) + " " + std::string(Verb(big_q)) + " " +
                                Dollars(diff) + " more than " + small->Quantity(small_q)
                          : small->Quantity(small_q) + " " + std::string(Verb(small_q)) + " " +
                                Dollars(diff) + " less than " + big->Quantity(big_q);
      return {Capitalize(std::move(s)), phrasing};
    }
    case TemplateCase::kRootValue:
      break;
  }
  Fail(ErrorCode::kInternal, "unreachable template case");
}

RenderedFormula RenderFormula(const Formula& f, const ItemMap& items, RandomSource& rng) {
  std::optional<DifferencePhrasing> phrasing;
  const TemplateCase tc = ClassifyTemplate(f);
  if (tc == TemplateCase::kDifference || tc == TemplateCase::kReversedDifference) {
    phrasing = static_cast<DifferencePhrasing>(rng.UniformInt(0, 1));
  }
  return RenderFormula(f, items, phrasing);
}

std::string_view ToString(QuestionPhrasing p) {
  return p == QuestionPhrasing::kHowMuch ? "how-much" : "price-of";
}

std::optional<QuestionPhrasing> ParseQuestionPhrasing(std::string_view name) {
  if (name == "how-much") return QuestionPhrasing::kHowMuch;
  if (name == "price-of") return QuestionPhrasing::kPriceOf;
  return std::nullopt;
}

std::string RenderQuestion(const ItemMap& items, VarIndex questioned, QuestionPhrasing phrasing) {
  const std::string item = items.at(questioned).Quantity(1);
  if (phrasing == QuestionPhrasing::kPriceOf) return "Question: what is the price of " + item + "?";
  return "Question: how much does " + item + " cost?";
}

std::string RenderGoldSolution(const std::vector<Formula>& formulas,
                               const std::vector<std::string>& sentences, const ItemMap& items,
                               VarIndex questioned, bool answerable,
                               const Determination& verdict) {
  if (formulas.size() != sentences.size()) {
    Fail(ErrorCode::kInternal, "gold solution: formula/sentence count mismatch");
  }
  if (answerable != verdict.is_unique()) {
    Fail(ErrorCode::kInternal, std::string("gold solution: ") +
                                   (answerable ? "answerable" : "unanswerable") +
                                   " problem with verdict " + ToString(verdict));
  }

  if (answerable) {
    // Formula that determines each variable from its parent.
    std::map<VarIndex, size_t> incoming;
    for (size_t k = 0; k < formulas.size(); ++k) {
      incoming[formulas[k].is_root() ? formulas[k].i : formulas[k].j] = k;
    }
    std::vector<size_t> path;
    for (VarIndex v = questioned;;) {
      auto it = incoming.find(v);
      if (it == incoming.end() || path.size() > formulas.size()) {
        Fail(ErrorCode::kInternal, "gold solution: no path from the root to x" +
                                       std::to_string(questioned));
      }
      path.push_back(it->second);
      if (formulas[it->second].is_root()) break;
      v = formulas[it->second].i;
    }
    std::reverse(path.begin(), path.end());

    const Formula& first = formulas[path.front()];
    std::string text = "It is given as a fact that " + Decapitalize(sentences[path.front()]) + ".";
    int value = first.c;
    for (size_t step = 1; step < path.size(); ++step) {
      const Formula& f = formulas[path[step]];
      const int rest = f.c - f.a * value;
      if (rest % f.b != 0) Fail(ErrorCode::kInternal, "gold solution: non-integer price");
      value = rest / f.b;
      text += " Combine with the fact that " + Decapitalize(sentences[path[step]]) + ", we get " +
              items.at(f.j).Quantity(1) + " costs " + Dollars(value) + ".";
    }
    if (verdict.value != value) {
      Fail(ErrorCode::kInternal, "gold solution: path value " + std::to_string(value) +
                                     " differs from verdict " + ToString(verdict));
    }
    return text;
  }

  const ComponentStats comp = TargetComponent(formulas, questioned);
  std::map<VarIndex, std::vector<VarIndex>> adjacent;
  for (const Formula& f : formulas) {
    if (f.is_root()) continue;
    adjacent[f.i].push_back(f.j);
    adjacent[f.j].push_back(f.i);
  }
  std::vector<std::string> names;
  std::set<VarIndex> seen{questioned};
  std::queue<VarIndex> queue;
  queue.push(questioned);
  while (!queue.empty()) {
    const VarIndex v = queue.front();
    queue.pop();
    names.push_back(items.at(v).Display());
    auto& next = adjacent[v];
    std::sort(next.begin(), next.end());
    for (VarIndex w : next) {
      if (seen.insert(w).second) queue.push(w);
    }
  }

  std::string known;
  for (size_t k = 0; k < formulas.size(); ++k) {
    if (std::find(comp.members.begin(), comp.members.end(), formulas[k].i) == comp.members.end()) {
      continue;
    }
    known += known.empty() ? Decapitalize(sentences[k]) : " " + sentences[k];
    known += ".";
  }
  return "All we know about the prices of " + JoinNames(names) + " is: " + known + " There are " +
         std::to_string(comp.variables) + " variables but only " +
         std::to_string(comp.equations) + " linear formula" + (comp.equations == 1 ? "" : "s") +
         ", so we cannot calculate the price of " + items.at(questioned).Quantity(1) + ".";
}

}  // namespace pricetree

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


#include <set>

#include <gtest/gtest.h>

#include "pricetree/dataset.hpp"
#include "pricetree/error.hpp"
#include "pricetree/verbalizer.hpp"
#include "test_support.hpp"

namespace pricetree {
namespace {

using testing::Canonical;
using testing::SentenceParser;

ItemMap Simple(std::initializer_list<Dish> dishes) {
  std::vector<ItemName> items;
  for (const Dish& d : dishes) items.push_back({d, std::nullopt});
  return ItemMap(items, false);
}

const ItemMap kBurgerItems = Simple({{"burger", "burgers"},
                                     {"scrambled egg", "scrambled eggs"},
                                     {"BLT sandwich", "BLT sandwiches"},
                                     {"pie", "pies"}});

std::string Render(const Formula& f, DifferencePhrasing p) {
  return RenderFormula(f, kBurgerItems, p).sentence;
}

TEST(AssignItemsTest, BurgerMapping) {
  ScriptedSource rng({0, 1, 2, 3});
  EXPECT_EQ(AssignItems(4, false, Vocabulary::Default(), rng), kBurgerItems);
}

TEST(AssignItemsTest, CompositeUsesBothRestaurants) {
  Vocabulary v{{{"burger", "burgers"}}, {"Urban Plate", "Bistro Nice"}};
  SeededSource rng(4);
  const ItemMap m = AssignItems(2, true, v, rng);
  std::set<std::string> shown = {m.at(1).Display(), m.at(2).Display()};
  EXPECT_EQ(shown, std::set<std::string>({"burger at Urban Plate", "burger at Bistro Nice"}));
}

TEST(AssignItemsTest, NoCollisionsAcrossDraws) {
  Vocabulary v = Vocabulary::Default();
  v.dishes.resize(9);
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    SeededSource rng(seed);
    const ItemMap m = AssignItems(10, true, v, rng);
    std::set<std::string> shown;
    for (const ItemName& it : m.items()) shown.insert(it.Display());
    ASSERT_EQ(shown.size(), 10u) << "seed " << seed;
  }
}

TEST(AssignItemsTest, TooSmallVocabularyNamesSize) {
  Vocabulary v{{{"burger", "burgers"}, {"pie", "pies"}}, {"Urban Plate"}};
  SeededSource rng(0);
  try {
    AssignItems(3, false, v, rng);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
    EXPECT_NE(std::string(e.what()).find("need 3"), std::string::npos);
  }
}

TEST(ItemMapTest, RejectsDuplicateNames) {
  EXPECT_THROW(Simple({{"pie", "pies"}, {"pie", "pies"}}), Error);
}

TEST(VocabularyTest, ParseDishLines) {
  const auto d = Vocabulary::ParseDishes("burger|burgers\nfruit tart\n\npiece of pie | pieces of pie\n");
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[1], (Dish{"fruit tart", "fruit tarts"}));
  EXPECT_EQ(d[2], (Dish{"piece of pie", "pieces of pie"}));
}

TEST(VocabularyTest, Articles) {
  EXPECT_EQ(Article("omelette"), "an");
  EXPECT_EQ(Article("Greek salad"), "a");
  EXPECT_EQ(Article("BLT sandwich"), "a");
}

TEST(RenderFormulaTest, RootValue) {
  EXPECT_EQ(RenderFormula(Formula::RootValue(1, 14), kBurgerItems, std::nullopt).sentence,
            "A burger costs 14 dollars");
}

TEST(RenderFormulaTest, DifferenceBothPhrasings) {
  const Formula f = Formula::Linear(1, 2, 2, -3, 4);
  EXPECT_EQ(Render(f, DifferencePhrasing::kLessThan),
            "3 scrambled eggs cost 4 dollars less than 2 burgers");
  EXPECT_EQ(Render(f, DifferencePhrasing::kMoreThan),
            "2 burgers cost 4 dollars more than 3 scrambled eggs");
}

TEST(RenderFormulaTest, ReversedDifferenceSwapsRoles) {
  const Formula f = Formula::Linear(1, 2, 1, -2, -3);
  EXPECT_EQ(ClassifyTemplate(f), TemplateCase::kReversedDifference);
  EXPECT_EQ(Render(f, DifferencePhrasing::kMoreThan),
            "2 scrambled eggs cost 3 dollars more than a burger");
  EXPECT_EQ(Render(f, DifferencePhrasing::kLessThan),
            "A burger costs 3 dollars less than 2 scrambled eggs");
}

TEST(RenderFormulaTest, NegativeLeadingCoefficientDifference) {
  const Formula f = Formula::Linear(2, 3, -1, 3, 13);  // 3*x3 - x2 = 13
  EXPECT_EQ(ClassifyTemplate(f), TemplateCase::kDifference);
  EXPECT_EQ(Render(f, DifferencePhrasing::kLessThan),
            "A scrambled egg costs 13 dollars less than 3 BLT sandwiches");
}

TEST(RenderFormulaTest, SumCompositeNames) {
  std::vector<ItemName> items = {{{"pizza", "pizzas"}, "Taste Good Cuisine"},
                                 {{"lasagna", "lasagnas"}, "Taste Good Cuisine"}};
  const ItemMap m(items, true);
  EXPECT_EQ(RenderFormula(Formula::Linear(1, 2, 1, 3, 48), m, std::nullopt).sentence,
            "A pizza at Taste Good Cuisine and 3 lasagnas at Taste Good Cuisine cost 48 dollars");
}

TEST(RenderFormulaTest, AllNegativeSumIsNormalized) {
  const Formula f = Formula::Linear(1, 2, -1, -2, -30);
  EXPECT_EQ(ClassifyTemplate(f), TemplateCase::kSum);
  EXPECT_EQ(Render(f, DifferencePhrasing::kMoreThan), "A burger and 2 scrambled eggs cost 30 dollars");
}

TEST(RenderFormulaTest, SamePrice) {
  const Formula f = Formula::Linear(1, 2, 1, -1, 0);
  EXPECT_EQ(ClassifyTemplate(f), TemplateCase::kSamePrice);
  EXPECT_EQ(RenderFormula(f, kBurgerItems, std::nullopt).sentence,
            "The price of a burger is the same as the price of a scrambled egg");
  EXPECT_EQ(RenderFormula(Formula::Linear(3, 4, -2, 3, 0), kBurgerItems, std::nullopt).sentence,
            "The price of 2 BLT sandwiches is the same as the price of 3 pies");
}

TEST(RenderFormulaTest, SingularDollar) {
  EXPECT_EQ(Render(Formula::Linear(1, 2, 1, -1, 1), DifferencePhrasing::kMoreThan),
            "A burger costs 1 dollar more than a scrambled egg");
}

TEST(RenderFormulaTest, DifferenceNeedsPhrasing) {
  EXPECT_THROW(RenderFormula(Formula::Linear(1, 2, 1, -1, 1), kBurgerItems, std::nullopt), Error);
}

TEST(RenderQuestionTest, Phrasings) {
  EXPECT_EQ(RenderQuestion(kBurgerItems, 3), "Question: how much does a BLT sandwich cost?");
  EXPECT_EQ(RenderQuestion(kBurgerItems, 3, QuestionPhrasing::kPriceOf),
            "Question: what is the price of a BLT sandwich?");
  const ItemMap m({{{"burger", "burgers"}, "Taste Good Cuisine"}}, true);
  EXPECT_EQ(RenderQuestion(m, 1), "Question: how much does a burger at Taste Good Cuisine cost?");
}

// Chain x1..x4 with values (10, 6, 7, 9), cut between x1 and x2.
TEST(GoldSolutionTest, ThreeVariableComponent) {
  const std::vector<Formula> kept = {Formula::RootValue(1, 10), Formula::Linear(2, 3, 2, -1, 5),
                                     Formula::Linear(3, 4, 1, 1, 16)};
  std::vector<std::string> sentences;
  for (const Formula& f : kept) {
    sentences.push_back(RenderFormula(f, kBurgerItems, DifferencePhrasing::kLessThan).sentence);
  }
  const std::string text = RenderGoldSolution(kept, sentences, kBurgerItems, 4, false,
                                              Determination::Underdetermined());
  EXPECT_EQ(text,
            "All we know about the prices of pie, BLT sandwich and scrambled egg is: a BLT "
            "sandwich costs 5 dollars less than 2 scrambled eggs. A BLT sandwich and a pie cost 16 "
            "dollars. There are 3 variables but only 2 linear formulas, so we cannot calculate the "
            "price of a pie.");
}

TEST(GoldSolutionTest, AnswerableChain) {
  const std::vector<Formula> fs = {Formula::RootValue(1, 10), Formula::Linear(1, 2, 1, 1, 16)};
  const std::vector<std::string> s = {"A burger costs 10 dollars",
                                      "A burger and a scrambled egg cost 16 dollars"};
  EXPECT_EQ(RenderGoldSolution(fs, s, kBurgerItems, 2, true, Determination::Unique(6)),
            "It is given as a fact that a burger costs 10 dollars. Combine with the fact that a "
            "burger and a scrambled egg cost 16 dollars, we get a scrambled egg costs 6 dollars.");
}

TEST(GoldSolutionTest, VerdictMismatchIsInternalError) {
  const std::vector<Formula> fs = {Formula::RootValue(1, 10)};
  const std::vector<std::string> s = {"A burger costs 10 dollars"};
  EXPECT_THROW(RenderGoldSolution(fs, s, kBurgerItems, 1, false, Determination::Unique(10)), Error);
  EXPECT_THROW(RenderGoldSolution(fs, s, kBurgerItems, 1, true, Determination::Underdetermined()),
               Error);
}

TEST(RoundTripTest, GeneratedSentencesParseBack) {
  std::set<TemplateCase> cases;
  int sentences = 0;
  for (const GenConfig& base : testing::FullSweep(1, 900)) {
    GenConfig c = base;
    const InstancePair p = GeneratePair(c, 0, VocabularyFor(c));
    const SentenceParser parser(p.answerable.item_map);
    for (size_t k = 0; k < p.answerable.formulas.size(); ++k) {
      const Formula& f = p.answerable.formulas[k];
      cases.insert(ClassifyTemplate(f));
      const auto got = parser.Parse(p.answerable.condition_sentences[k]);
      ASSERT_TRUE(got) << p.answerable.condition_sentences[k];
      ASSERT_EQ(*got, Canonical(f)) << p.answerable.condition_sentences[k];
      ++sentences;
    }
  }
  EXPECT_GT(sentences, 2000);
  EXPECT_EQ(cases.size(), 5u);
}

}  // namespace
}  // namespace pricetree

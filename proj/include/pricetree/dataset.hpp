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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pricetree/formula.hpp"
#include "pricetree/oracle.hpp"
#include "pricetree/tree.hpp"
#include "pricetree/verbalizer.hpp"

namespace pricetree {

inline constexpr int kSchemaVersion = 1;

struct GenConfig {
  int num_vars = 4;
  int ans_depth = 3;
  int cut_depth = 1;
  bool composite_name = false;
  ConditionOrder order = ConditionOrder::kRandom;
  int count = 1;
  uint64_t corpus_seed = 0;
  std::string dish_vocab;        // empty: built-in list
  std::string restaurant_vocab;  // empty: built-in list
  QuestionPhrasing question_phrasing = QuestionPhrasing::kHowMuch;
  bool root_attachment = true;

  // Throws Error(kInvalidConfig).
  void Validate() const;

  // Short cell label such as "d3v4c1sf" (depth, vars, cut, simple/composite,
  // forward/backward/random).
  std::string CellKey() const;

  bool operator==(const GenConfig&) const = default;
};

// Flat "key = value" document; '#' starts a comment. Keys are the camelCase
// field names (numVars, ansDepth, cutDepth, compositeName, order, count,
// corpusSeed, dishVocab, restaurantVocab, questionPhrasing, rootAttachment).
// Unknown keys are rejected.
GenConfig ParseGenConfig(std::string_view text);
GenConfig LoadGenConfig(const std::string& path);
std::string FormatGenConfig(const GenConfig& config);

enum class Variant { kAnswerable, kUnanswerable };

std::string_view ToString(Variant v);

struct InstanceMetadata {
  GenConfig config;
  uint64_t index = 0;
  std::vector<VarIndex> tree_parents;  // parent of x_1..x_numVars, 0 = root
  Edge cut_edge;
  size_t cut_position = 0;    // position of the cut sentence in the answerable list
  std::string cut_sentence;
  // One entry per answerable condition sentence: -1 none, 0 "more than",
  // 1 "less than".
  std::vector<int> phrasing_coins;
  // BFS rank of each answerable condition, in presented order.
  std::vector<size_t> order_permutation;

  bool operator==(const InstanceMetadata&) const = default;
};

struct ProblemInstance {
  std::string id;
  std::string pair_id;
  Variant variant = Variant::kAnswerable;
  std::string full_text;
  std::vector<std::string> condition_sentences;
  std::string question_sentence;
  std::vector<Formula> formulas;  // parallel to condition_sentences
  ItemMap item_map;
  VarIndex questioned_var = 0;
  std::optional<int> gold_answer;
  std::string gold_solution_text;
  InstanceMetadata metadata;

  bool answerable() const { return variant == Variant::kAnswerable; }

  bool operator==(const ProblemInstance&) const = default;
};

struct InstancePair {
  ProblemInstance answerable;
  ProblemInstance unanswerable;
};

// Sub-stream for (config.corpus_seed, index). Throws Error(kCertification)
// if the oracle rejects either variant.
InstancePair GeneratePair(const GenConfig& config, uint64_t index, const Vocabulary& vocab);

// Same pipeline with an explicit random source. Draw order: values, extra
// node attachment, (a, b) per variable edge in BFS order, the ordering
// permutation, item assignment, then one phrasing coin per difference
// sentence in presented order.
InstancePair GeneratePair(const GenConfig& config, uint64_t index, const Vocabulary& vocab,
                          RandomSource& rng);

// Resolves the vocabulary files named in a config.
Vocabulary VocabularyFor(const GenConfig& config);

struct Dataset {
  std::vector<ProblemInstance> instances;  // answerable, unanswerable, answerable, ...

  bool operator==(const Dataset&) const = default;
};

// config.count pairs, index order. Pairs are generated on up to `threads`
// workers (0 picks the hardware concurrency); output is independent of it.
Dataset GenerateCorpus(const GenConfig& config, unsigned threads = 0);

// Concatenation of several corpora.
Dataset GenerateCorpora(const std::vector<GenConfig>& configs, unsigned threads = 0);

// Names: "table-main", "fig-structure", "fig-cutdepth". Each cell gets its own
// corpus seed derived from `seed` and the cell position.
std::vector<GenConfig> Preset(std::string_view name, uint64_t seed);
std::vector<std::string> PresetNames();

// Wraps the oracle: checks the instance label and the formula/sentence shape.
VerificationReport VerifyInstance(const ProblemInstance& instance);

struct CertificationSummary {
  size_t instances = 0;
  size_t certified = 0;
  size_t answerable = 0;
  size_t unanswerable = 0;
  size_t pairs_checked = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // (id, reason)

  bool ok() const { return failures.empty() && certified == instances; }
};

// Certifies every instance and the sentence delta of every complete pair.
CertificationSummary Certify(const Dataset& dataset, unsigned threads = 0);

std::string ToJsonLine(const ProblemInstance& instance);
ProblemInstance FromJsonLine(std::string_view line);

// One instance per line. WriteJsonl does not certify; SaveDataset does.
void WriteJsonl(std::ostream& out, const Dataset& dataset);
// Throws Error(kParse) naming the 1-based line number.
Dataset ReadJsonl(std::istream& in);

// Certifies, then writes. Throws Error(kCertification) without touching the
// file when any instance fails.
void SaveDataset(const Dataset& dataset, const std::string& path);
Dataset LoadDataset(const std::string& path);

// Human-readable dump of one instance: tree, formulas, text, gold solution.
std::string RenderInstance(const ProblemInstance& instance);

}  // namespace pricetree

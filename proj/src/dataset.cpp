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

#include "pricetree/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pricetree/error.hpp"

namespace pricetree {
namespace {

using json = nlohmann::ordered_json;

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

template <typename Int>
Int ParseInt(std::string_view key, const std::string& value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    Fail(ErrorCode::kInvalidConfig, "config: " + std::string(key) + " expects an integer, got '" +
                                        value + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  Fail(ErrorCode::kInvalidConfig,
       "config: " + std::string(key) + " expects true or false, got '" + value + "'");
}

unsigned WorkerCount(unsigned requested, size_t jobs) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

// Runs fn(k) for k in [0, jobs) on `threads` workers; rethrows the first error.
template <typename Fn>
void ParallelFor(size_t jobs, unsigned threads, Fn&& fn) {
  const unsigned workers = WorkerCount(threads, jobs);
  if (workers <= 1) {
    for (size_t k = 0; k < jobs; ++k) fn(k);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t k; (k = next.fetch_add(1)) < jobs;) {
          try {
            fn(k);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = jobs;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

json ConfigToJson(const GenConfig& c) {
  return json{{"numVars", c.num_vars},
              {"ansDepth", c.ans_depth},
              {"cutDepth", c.cut_depth},
              {"compositeName", c.composite_name},
              {"order", ToString(c.order)},
              {"count", c.count},
              {"corpusSeed", c.corpus_seed},
              {"dishVocab", c.dish_vocab},
              {"restaurantVocab", c.restaurant_vocab},
              {"questionPhrasing", ToString(c.question_phrasing)},
              {"rootAttachment", c.root_attachment}};
}

GenConfig ConfigFromJson(const json& j) {
  GenConfig c;
  c.num_vars = j.at("numVars").get<int>();
  c.ans_depth = j.at("ansDepth").get<int>();
  c.cut_depth = j.at("cutDepth").get<int>();
  c.composite_name = j.at("compositeName").get<bool>();
  const auto order = ParseConditionOrder(j.at("order").get<std::string>());
  if (!order) Fail(ErrorCode::kParse, "unknown order");
  c.order = *order;
  c.count = j.at("count").get<int>();
  c.corpus_seed = j.at("corpusSeed").get<uint64_t>();
  c.dish_vocab = j.at("dishVocab").get<std::string>();
  c.restaurant_vocab = j.at("restaurantVocab").get<std::string>();
  const auto phrasing = ParseQuestionPhrasing(j.at("questionPhrasing").get<std::string>());
  if (!phrasing) Fail(ErrorCode::kParse, "unknown questionPhrasing");
  c.question_phrasing = *phrasing;
  c.root_attachment = j.at("rootAttachment").get<bool>();
  return c;
}

json FormulaToJson(const Formula& f) {
  if (f.is_root()) return json{{"kind", "rootValue"}, {"var", f.i}, {"c", f.c}};
  return json{{"kind", "linear"}, {"i", f.i}, {"j", f.j}, {"a", f.a}, {"b", f.b}, {"c", f.c}};
}

Formula FormulaFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rootValue") return Formula::RootValue(j.at("var").get<int>(), j.at("c").get<int>());
  if (kind == "linear") {
    return Formula::Linear(j.at("i").get<int>(), j.at("j").get<int>(), j.at("a").get<int>(),
                           j.at("b").get<int>(), j.at("c").get<int>());
  }
  Fail(ErrorCode::kParse, "unknown formula kind '" + kind + "'");
}

json ItemMapToJson(const ItemMap& items) {
  json list = json::array();
  for (VarIndex v = 1; v <= items.size(); ++v) {
    const ItemName& item = items.at(v);
    json e{{"var", v}, {"dish", item.dish.singular}, {"plural", item.dish.plural}};
    e["restaurant"] = item.restaurant ? json(*item.restaurant) : json(nullptr);
    e["display"] = item.Display();
    list.push_back(std::move(e));
  }
  return json{{"compositeName", items.composite()}, {"items", std::move(list)}};
}

ItemMap ItemMapFromJson(const json& j) {
  std::vector<ItemName> items;
  for (const json& e : j.at("items")) {
    ItemName item{{e.at("dish").get<std::string>(), e.at("plural").get<std::string>()},
                  std::nullopt};
    if (!e.at("restaurant").is_null()) item.restaurant = e.at("restaurant").get<std::string>();
    items.push_back(std::move(item));
  }
  return ItemMap(std::move(items), j.at("compositeName").get<bool>());
}

std::string JoinText(const std::vector<std::string>& sentences, const std::string& question) {
  std::string text;
  for (const std::string& s : sentences) text += s + ". ";
  return text + question;
}

std::string PairId(const GenConfig& config, uint64_t index) {
  return config.CellKey() + "-s" + std::to_string(config.corpus_seed) + "-i" +
         std::to_string(index);
}

}  // namespace

void GenConfig::Validate() const {
  if (ans_depth < 2) {
    Fail(ErrorCode::kInvalidConfig, "ansDepth must be >= 2, got " + std::to_string(ans_depth));
  }
  if (num_vars < ans_depth) {
    Fail(ErrorCode::kInvalidConfig, "numVars must be >= ansDepth, got numVars=" +
                                        std::to_string(num_vars) +
                                        " ansDepth=" + std::to_string(ans_depth));
  }
  ValidateCut({ans_depth, cut_depth});
  if (count < 1) Fail(ErrorCode::kInvalidConfig, "count must be >= 1");
}

std::string GenConfig::CellKey() const {
  return "d" + std::to_string(ans_depth) + "v" + std::to_string(num_vars) + "c" +
         std::to_string(cut_depth) + (composite_name ? "c" : "s") + ToString(order).front();
}

GenConfig ParseGenConfig(std::string_view text) {
  GenConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = Trim(line);
    if (t.empty()) continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      Fail(ErrorCode::kInvalidConfig, "config line " + std::to_string(line_no) +
                                          ": expected key = value");
    }
    const std::string key = Trim(std::string_view(t).substr(0, eq));
    const std::string value = Trim(std::string_view(t).substr(eq + 1));
    if (seen[key]++) {
      Fail(ErrorCode::kInvalidConfig, "config line " + std::to_string(line_no) +
                                          ": duplicate key '" + key + "'");
    }
    if (key == "numVars") {
      c.num_vars = ParseInt<int>(key, value);
    } else if (key == "ansDepth") {
      c.ans_depth = ParseInt<int>(key, value);
    } else if (key == "cutDepth") {
      c.cut_depth = ParseInt<int>(key, value);
    } else if (key == "compositeName") {
      c.composite_name = ParseBool(key, value);
    } else if (key == "order") {
      const auto order = ParseConditionOrder(value);
      if (!order) {
        Fail(ErrorCode::kInvalidConfig, "config: order must be forward, backward or random");
      }
      c.order = *order;
    } else if (key == "count") {
      c.count = ParseInt<int>(key, value);
    } else if (key == "corpusSeed") {
      c.corpus_seed = ParseInt<uint64_t>(key, value);
    } else if (key == "dishVocab") {
      c.dish_vocab = value;
    } else if (key == "restaurantVocab") {
      c.restaurant_vocab = value;
    } else if (key == "questionPhrasing") {
      const auto p = ParseQuestionPhrasing(value);
      if (!p) Fail(ErrorCode::kInvalidConfig, "config: questionPhrasing must be how-much or price-of");
      c.question_phrasing = *p;
    } else if (key == "rootAttachment") {
      c.root_attachment = ParseBool(key, value);
    } else {
      Fail(ErrorCode::kInvalidConfig, "config line " + std::to_string(line_no) +
                                          ": unknown key '" + key + "'");
    }
  }
  c.Validate();
  return c;
}

GenConfig LoadGenConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseGenConfig(ss.str());
}

std::string FormatGenConfig(const GenConfig& c) {
  std::ostringstream out;
  out << "numVars = " << c.num_vars << "\n"
      << "ansDepth = " << c.ans_depth << "\n"
      << "cutDepth = " << c.cut_depth << "\n"
      << "compositeName = " << (c.composite_name ? "true" : "false") << "\n"
      << "order = " << ToString(c.order) << "\n"
      << "count = " << c.count << "\n"
      << "corpusSeed = " << c.corpus_seed << "\n";
  if (!c.dish_vocab.empty()) out << "dishVocab = " << c.dish_vocab << "\n";
  if (!c.restaurant_vocab.empty()) out << "restaurantVocab = " << c.restaurant_vocab << "\n";
  out << "questionPhrasing = " << ToString(c.question_phrasing) << "\n"
      << "rootAttachment = " << (c.root_attachment ? "true" : "false") << "\n";
  return out.str();
}

std::string_view ToString(Variant v) {
  return v == Variant::kAnswerable ? "answerable" : "unanswerable";
}

Vocabulary VocabularyFor(const GenConfig& config) {
  return Vocabulary::Load(config.dish_vocab, config.restaurant_vocab);
}

InstancePair GeneratePair(const GenConfig& config, uint64_t index, const Vocabulary& vocab) {
  SeededSource rng = SeededSource::ForInstance(config.corpus_seed, index);
  return GeneratePair(config, index, vocab, rng);
}

InstancePair GeneratePair(const GenConfig& config, uint64_t index, const Vocabulary& vocab,
                          RandomSource& rng) {
  config.Validate();
  const VarDict vars = SampleVarValues(config.num_vars, rng);
  const Tree tree =
      BuildTree(config.num_vars, config.ans_depth, rng, {.root_attachment = config.root_attachment});
  const std::vector<Edge> edges = BfsEdges(tree);
  std::vector<Formula> bfs_formulas;
  bfs_formulas.reserve(edges.size());
  for (const Edge& e : edges) bfs_formulas.push_back(SampleFormula(e, vars, rng));
  const CutSpec cut{config.ans_depth, config.cut_depth};
  const size_t cut_rank = CutPosition(edges, cut);

  const std::vector<size_t> perm = OrderPermutation(bfs_formulas.size(), config.order, rng);
  const ItemMap items = AssignItems(config.num_vars, config.composite_name, vocab, rng);

  std::vector<Formula> formulas;
  std::vector<std::string> sentences;
  std::vector<int> coins;
  size_t cut_position = 0;
  for (size_t k = 0; k < perm.size(); ++k) {
    const Formula& f = bfs_formulas[perm[k]];
    if (!f.SatisfiedBy(vars)) {
      Fail(ErrorCode::kInternal, "generated formula " + ToString(f) + " violates its values");
    }
    RenderedFormula r = RenderFormula(f, items, rng);
    formulas.push_back(f);
    sentences.push_back(std::move(r.sentence));
    coins.push_back(r.phrasing ? static_cast<int>(*r.phrasing) : -1);
    if (perm[k] == cut_rank) cut_position = k;
  }

  const VarIndex target = tree.questioned();
  const std::string question = RenderQuestion(items, target, config.question_phrasing);

  InstanceMetadata meta;
  meta.config = config;
  meta.index = index;
  for (VarIndex v = 1; v <= tree.num_vars(); ++v) meta.tree_parents.push_back(tree.parent(v));
  meta.cut_edge = edges[cut_rank];
  meta.cut_position = cut_position;
  meta.cut_sentence = sentences[cut_position];
  meta.phrasing_coins = coins;
  meta.order_permutation = perm;

  const std::string pair_id = PairId(config, index);
  InstancePair pair;

  ProblemInstance& ans = pair.answerable;
  ans.id = pair_id + "-ans";
  ans.pair_id = pair_id;
  ans.variant = Variant::kAnswerable;
  ans.condition_sentences = sentences;
  ans.question_sentence = question;
  ans.full_text = JoinText(sentences, question);
  ans.formulas = formulas;
  ans.item_map = items;
  ans.questioned_var = target;
  ans.gold_answer = vars.at(target);
  ans.gold_solution_text = RenderGoldSolution(formulas, sentences, items, target, true,
                                              SolveExact(formulas, target));
  ans.metadata = meta;

  ProblemInstance& un = pair.unanswerable;
  un.id = pair_id + "-unans";
  un.pair_id = pair_id;
  un.variant = Variant::kUnanswerable;
  un.condition_sentences = sentences;
  un.condition_sentences.erase(un.condition_sentences.begin() +
                               static_cast<std::ptrdiff_t>(cut_position));
  un.formulas = formulas;
  un.formulas.erase(un.formulas.begin() + static_cast<std::ptrdiff_t>(cut_position));
  un.question_sentence = question;
  un.full_text = JoinText(un.condition_sentences, question);
  un.item_map = items;
  un.questioned_var = target;
  un.gold_solution_text = RenderGoldSolution(un.formulas, un.condition_sentences, items, target,
                                             false, SolveExact(un.formulas, target));
  un.metadata = std::move(meta);

  for (const ProblemInstance* inst : {&pair.answerable, &pair.unanswerable}) {
    const VerificationReport report = VerifyInstance(*inst);
    if (!report.certified) {
      Fail(ErrorCode::kCertification, inst->id + ": " + report.failure);
    }
  }
  return pair;
}

Dataset GenerateCorpus(const GenConfig& config, unsigned threads) {
  config.Validate();
  const Vocabulary vocab = VocabularyFor(config);
  const auto count = static_cast<size_t>(config.count);
  std::vector<InstancePair> pairs(count);
  ParallelFor(count, threads, [&](size_t k) { pairs[k] = GeneratePair(config, k, vocab); });
  Dataset out;
  out.instances.reserve(2 * count);
  for (InstancePair& p : pairs) {
    out.instances.push_back(std::move(p.answerable));
    out.instances.push_back(std::move(p.unanswerable));
  }
  return out;
}

Dataset GenerateCorpora(const std::vector<GenConfig>& configs, unsigned threads) {
  Dataset out;
  for (const GenConfig& c : configs) {
    Dataset part = GenerateCorpus(c, threads);
    std::move(part.instances.begin(), part.instances.end(), std::back_inserter(out.instances));
  }
  return out;
}

std::vector<std::string> PresetNames() { return {"table-main", "fig-structure", "fig-cutdepth"}; }

std::vector<GenConfig> Preset(std::string_view name, uint64_t seed) {
  std::vector<GenConfig> cells;
  auto cell = [&](int ans_depth, int num_vars, int cut_depth, bool composite) {
    GenConfig c;
    c.ans_depth = ans_depth;
    c.num_vars = num_vars;
    c.cut_depth = cut_depth;
    c.composite_name = composite;
    c.order = ConditionOrder::kRandom;
    c.count = 500;
    c.corpus_seed = DeriveSeed(seed, static_cast<uint64_t>(cells.size()));
    cells.push_back(c);
  };
  if (name == "table-main") {
    for (int d : {2, 4, 6, 8}) cell(d, d + 2, d / 2, true);
  } else if (name == "fig-structure") {
    for (int d = 4; d <= 8; ++d) {
      for (int extra : {0, 2}) {
        for (bool composite : {true, false}) cell(d, d + extra, d / 2, composite);
      }
    }
  } else if (name == "fig-cutdepth") {
    for (int d : {7, 8}) {
      for (int cut = 1; cut < d; ++cut) cell(d, d + 2, cut, true);
    }
  } else {
    Fail(ErrorCode::kInvalidConfig, "unknown preset '" + std::string(name) +
                                        "' (expected table-main, fig-structure or fig-cutdepth)");
  }
  return cells;
}

VerificationReport VerifyInstance(const ProblemInstance& instance) {
  if (instance.formulas.size() != instance.condition_sentences.size()) {
    VerificationReport r;
    r.target = instance.questioned_var;
    r.failure = "formula count differs from sentence count";
    return r;
  }
  if (!instance.answerable() && instance.gold_answer) {
    VerificationReport r;
    r.target = instance.questioned_var;
    r.failure = "unanswerable instance carries a gold answer";
    return r;
  }
  if (instance.answerable() && !instance.gold_answer) {
    VerificationReport r;
    r.target = instance.questioned_var;
    r.failure = "answerable instance lacks a gold answer";
    return r;
  }
  return VerifyLabel(instance.formulas, instance.questioned_var,
                     instance.answerable() ? instance.gold_answer : std::nullopt);
}

CertificationSummary Certify(const Dataset& dataset, unsigned threads) {
  const auto& items = dataset.instances;
  std::vector<VerificationReport> reports(items.size());
  ParallelFor(items.size(), threads, [&](size_t k) { reports[k] = VerifyInstance(items[k]); });

  CertificationSummary s;
  s.instances = items.size();
  std::map<std::string, std::pair<const ProblemInstance*, const ProblemInstance*>> pairs;
  for (size_t k = 0; k < items.size(); ++k) {
    const ProblemInstance& inst = items[k];
    (inst.answerable() ? s.answerable : s.unanswerable)++;
    if (reports[k].certified) {
      ++s.certified;
    } else {
      s.failures.emplace_back(inst.id, reports[k].failure);
    }
    auto& slot = pairs[inst.pair_id];
    (inst.answerable() ? slot.first : slot.second) = &inst;
  }
  for (const auto& [pair_id, p] : pairs) {
    const auto [ans, un] = p;
    if (!ans || !un) continue;
    ++s.pairs_checked;
    std::vector<std::string> expected = ans->condition_sentences;
    const size_t pos = ans->metadata.cut_position;
    if (pos >= expected.size() || expected[pos] != ans->metadata.cut_sentence) {
      s.failures.emplace_back(ans->id, "cut metadata does not match its sentence list");
      continue;
    }
    expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(pos));
    if (expected != un->condition_sentences) {
      s.failures.emplace_back(un->id, "sentences are not the answerable list minus the cut");
    }
  }
  return s;
}

std::string ToJsonLine(const ProblemInstance& inst) {
  const InstanceMetadata& m = inst.metadata;
  json formulas = json::array();
  for (const Formula& f : inst.formulas) formulas.push_back(FormulaToJson(f));
  json meta{{"config", ConfigToJson(m.config)},
            {"index", m.index},
            {"treeParents", m.tree_parents},
            {"cutEdge", {{"parent", m.cut_edge.parent}, {"child", m.cut_edge.child}}},
            {"cutPosition", m.cut_position},
            {"cutSentence", m.cut_sentence},
            {"phrasingCoins", m.phrasing_coins},
            {"orderPermutation", m.order_permutation}};
  json j{{"schemaVersion", kSchemaVersion},
         {"id", inst.id},
         {"pairId", inst.pair_id},
         {"variant", ToString(inst.variant)},
         {"fullText", inst.full_text},
         {"conditionSentences", inst.condition_sentences},
         {"questionSentence", inst.question_sentence},
         {"formulas", std::move(formulas)},
         {"itemMap", ItemMapToJson(inst.item_map)},
         {"questionedVar", inst.questioned_var}};
  if (inst.gold_answer) j["goldAnswer"] = *inst.gold_answer;
  j["goldSolutionText"] = inst.gold_solution_text;
  j["metadata"] = std::move(meta);
  return j.dump();
}

ProblemInstance FromJsonLine(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.at("schemaVersion").get<int>() != kSchemaVersion) {
      Fail(ErrorCode::kParse, "unsupported schemaVersion " + j.at("schemaVersion").dump());
    }
    ProblemInstance inst;
    inst.id = j.at("id").get<std::string>();
    inst.pair_id = j.at("pairId").get<std::string>();
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "answerable") {
      inst.variant = Variant::kAnswerable;
    } else if (variant == "unanswerable") {
      inst.variant = Variant::kUnanswerable;
    } else {
      Fail(ErrorCode::kParse, "unknown variant '" + variant + "'");
    }
    inst.full_text = j.at("fullText").get<std::string>();
    inst.condition_sentences = j.at("conditionSentences").get<std::vector<std::string>>();
    inst.question_sentence = j.at("questionSentence").get<std::string>();
    for (const json& f : j.at("formulas")) inst.formulas.push_back(FormulaFromJson(f));
    inst.item_map = ItemMapFromJson(j.at("itemMap"));
    inst.questioned_var = j.at("questionedVar").get<int>();
    if (j.contains("goldAnswer")) inst.gold_answer = j.at("goldAnswer").get<int>();
    inst.gold_solution_text = j.at("goldSolutionText").get<std::string>();
    const json& m = j.at("metadata");
    inst.metadata.config = ConfigFromJson(m.at("config"));
    inst.metadata.index = m.at("index").get<uint64_t>();
    inst.metadata.tree_parents = m.at("treeParents").get<std::vector<int>>();
    inst.metadata.cut_edge = {m.at("cutEdge").at("parent").get<int>(),
                              m.at("cutEdge").at("child").get<int>()};
    inst.metadata.cut_position = m.at("cutPosition").get<size_t>();
    inst.metadata.cut_sentence = m.at("cutSentence").get<std::string>();
    inst.metadata.phrasing_coins = m.at("phrasingCoins").get<std::vector<int>>();
    inst.metadata.order_permutation = m.at("orderPermutation").get<std::vector<size_t>>();
    return inst;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad instance record: ") + e.what());
  }
}

void WriteJsonl(std::ostream& out, const Dataset& dataset) {
  for (const ProblemInstance& inst : dataset.instances) out << ToJsonLine(inst) << '\n';
}

Dataset ReadJsonl(std::istream& in) {
  Dataset d;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      d.instances.push_back(FromJsonLine(line));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return d;
}

void SaveDataset(const Dataset& dataset, const std::string& path) {
  const CertificationSummary s = Certify(dataset);
  if (!s.ok()) {
    const auto& [id, why] = s.failures.front();
    Fail(ErrorCode::kCertification, "refusing to write " + std::to_string(s.failures.size()) +
                                        " uncertified instance(s); first: " + id + ": " + why);
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  WriteJsonl(out, dataset);
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path);
}

Dataset LoadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  return ReadJsonl(in);
}

std::string RenderInstance(const ProblemInstance& inst) {
  std::ostringstream out;
  const InstanceMetadata& m = inst.metadata;
  out << "id:       " << inst.id << "\n"
      << "variant:  " << ToString(inst.variant) << "\n"
      << "config:   ansDepth=" << m.config.ans_depth << " numVars=" << m.config.num_vars
      << " cutDepth=" << m.config.cut_depth
      << " compositeName=" << (m.config.composite_name ? "true" : "false")
      << " order=" << ToString(m.config.order) << "\n\n";

  out << "tree:\n";
  std::map<VarIndex, std::vector<VarIndex>> kids;
  for (size_t v = 0; v < m.tree_parents.size(); ++v) {
    kids[m.tree_parents[v]].push_back(static_cast<VarIndex>(v + 1));
  }
  auto label = [&](VarIndex v) {
    std::string s = "x" + std::to_string(v);
    if (v <= inst.item_map.size()) s += " (" + inst.item_map.at(v).Display() + ")";
    if (v == inst.questioned_var) s += "  <- questioned";
    return s;
  };
  auto draw = [&](auto&& self, VarIndex node, const std::string& indent) -> void {
    const auto& children = kids[node];
    for (size_t k = 0; k < children.size(); ++k) {
      const bool last = k + 1 == children.size();
      const VarIndex c = children[k];
      const bool cut = !inst.answerable() && m.cut_edge == Edge{node, c};
      out << indent << (last ? "`-" : "|-") << (cut ? "/ /-" : "") << label(c) << "\n";
      self(self, c, indent + (last ? "  " : "| "));
    }
  };
  out << "root\n";
  draw(draw, kRoot, "");
  if (!inst.answerable()) {
    out << "(cut: x" << m.cut_edge.parent << " -> x" << m.cut_edge.child
        << ", removed: \"" << m.cut_sentence << ".\")\n";
  }

  out << "\nformulas:\n";
  for (size_t k = 0; k < inst.formulas.size(); ++k) {
    out << "  " << ToString(inst.formulas[k]) << "    | " << inst.condition_sentences[k] << ".\n";
  }
  out << "\ntext:\n  " << inst.full_text << "\n\ngold solution:\n  " << inst.gold_solution_text
      << "\n\nanswer: " << (inst.gold_answer ? std::to_string(*inst.gold_answer) : "unknown")
      << "\n";
  return out.str();
}

}  // namespace pricetree

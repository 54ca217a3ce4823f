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

// Model profiles and prompt construction.

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pricetree/eval.hpp"

namespace pricetree::eval {

using json = nlohmann::json;

const char kSystemPrompt[] =
    "As an expert problem solver, solve step by step the following mathematical questions.";

const char kInstruction[] =
    "Please solve the following math question, and then answer in the form 'Answer: x'. "
    "If the known conditions are not sufficient to answer the question, please answer in the "
    "form 'Answer: unknown.'.";

namespace {

std::string QuestionBlock(const ProblemInstance& instance) {
  return "Question: " + instance.full_text + "\n\nYour solution:";
}

std::string ExemplarBlock(const ProblemInstance& exemplar) {
  return "Question: " + exemplar.full_text + "\n\nYour solution: " +
         exemplar.gold_solution_text + "\nAnswer: " +
         (exemplar.gold_answer ? std::to_string(*exemplar.gold_answer) : "unknown.");
}

PromptMessages Wrap(std::string user, const ModelProfile& profile) {
  PromptMessages out;
  if (!profile.is_reasoning) out.push_back({Role::kSystem, kSystemPrompt});
  out.push_back({Role::kUser, std::move(user)});
  return out;
}

// k distinct positions from [0, n) via a partial Fisher-Yates pass.
std::vector<size_t> Sample(size_t n, size_t k, RandomSource& rng) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (size_t i = 0; i < k; ++i) {
    const auto j = static_cast<size_t>(rng.UniformInt(static_cast<int64_t>(i),
                                                      static_cast<int64_t>(n) - 1));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

ModelProfile ParseProfile(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("profile: ") + e.what());
  }
  if (!j.is_object()) Fail(ErrorCode::kParse, "profile: expected a JSON object");
  ModelProfile p;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "endpoint") p.endpoint = value.get<std::string>();
      else if (key == "model") p.model = value.get<std::string>();
      else if (key == "isReasoning") p.is_reasoning = value.get<bool>();
      else if (key == "maxTokens") p.max_tokens = value.get<int>();
      else if (key == "temperature") p.temperature = value.get<double>();
      else if (key == "maxCompletionTokens") p.max_completion_tokens = value.get<int>();
      else if (key == "reasoningEffort") p.reasoning_effort = value.get<std::string>();
      else if (key == "apiKeyEnv") p.api_key_env = value.get<std::string>();
      else if (key == "concurrency") p.concurrency = value.get<int>();
      else if (key == "maxRetries") p.max_retries = value.get<int>();
      else if (key == "backoffInitialMs") p.backoff_initial_ms = value.get<int>();
      else if (key == "backoffMaxMs") p.backoff_max_ms = value.get<int>();
      else if (key == "timeoutS") p.timeout_s = value.get<int>();
      else Fail(ErrorCode::kInvalidConfig, "profile: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("profile: ") + e.what());
  }
  if (p.model.empty()) Fail(ErrorCode::kInvalidConfig, "profile: model is required");
  if (p.concurrency < 1) Fail(ErrorCode::kInvalidConfig, "profile: concurrency must be >= 1");
  if (p.max_retries < 0) Fail(ErrorCode::kInvalidConfig, "profile: maxRetries must be >= 0");
  return p;
}

ModelProfile LoadProfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open profile " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseProfile(ss.str());
}

std::string_view ToString(Role r) { return r == Role::kSystem ? "system" : "user"; }

PromptMessages BuildZeroShotPrompt(const ProblemInstance& instance, const ModelProfile& profile) {
  return Wrap(std::string(kInstruction) + "\n\n" + QuestionBlock(instance), profile);
}

PromptMessages BuildFewShotPrompt(const ProblemInstance& instance,
                                  const std::vector<ProblemInstance>& pool, RandomSource& rng,
                                  const ModelProfile& profile) {
  std::vector<const ProblemInstance*> answerable, unanswerable;
  for (const ProblemInstance& p : pool) {
    if (p.pair_id == instance.pair_id) continue;
    (p.answerable() ? answerable : unanswerable).push_back(&p);
  }
  constexpr size_t kPerVariant = 3;
  if (answerable.size() < kPerVariant || unanswerable.size() < kPerVariant) {
    Fail(ErrorCode::kInvalidConfig,
         "few-shot pool needs at least 3 answerable and 3 unanswerable problems outside pair " +
             instance.pair_id + " (have " + std::to_string(answerable.size()) + " and " +
             std::to_string(unanswerable.size()) + ")");
  }
  std::vector<const ProblemInstance*> picked;
  for (size_t k : Sample(answerable.size(), kPerVariant, rng)) picked.push_back(answerable[k]);
  for (size_t k : Sample(unanswerable.size(), kPerVariant, rng)) picked.push_back(unanswerable[k]);
  Shuffle(std::span<const ProblemInstance*>(picked), rng);

  std::string user = std::string(kInstruction) + "\n\n";
  for (const ProblemInstance* e : picked) user += ExemplarBlock(*e) + "\n\n";
  user += QuestionBlock(instance);
  return Wrap(std::move(user), profile);
}

std::vector<ProblemInstance> BuildDefaultPool(const std::vector<ProblemInstance>& targets,
                                              int pairs_per_config) {
  std::vector<ProblemInstance> pool;
  std::set<std::string> done;
  for (const ProblemInstance& t : targets) {
    GenConfig c = t.metadata.config;
    if (!done.insert(FormatGenConfig(c)).second) continue;
    c.corpus_seed = DeriveSeed(c.corpus_seed, std::string_view("pool"));
    c.count = pairs_per_config;
    Dataset d = GenerateCorpus(c);
    std::move(d.instances.begin(), d.instances.end(), std::back_inserter(pool));
  }
  return pool;
}

}  // namespace pricetree::eval

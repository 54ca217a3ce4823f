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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "pricetree/eval.hpp"

namespace pricetree::eval {

using json = nlohmann::ordered_json;

std::string_view ToString(ParsedAnswer::Verdict v) {
  switch (v) {
    case ParsedAnswer::Verdict::kUnknown: return "unknown";
    case ParsedAnswer::Verdict::kNumber: return "number";
    case ParsedAnswer::Verdict::kUnparseable: return "unparseable";
  }
  return "?";
}

ParsedAnswer ExtractAnswer(std::string_view response) {
  std::string lower(response);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  ParsedAnswer out;
  constexpr std::string_view kTrigger = "answer";
  const size_t pos = lower.rfind(kTrigger);
  if (pos == std::string::npos) return out;
  out.raw_tail = lower.substr(pos + kTrigger.size());
  const std::string& tail = out.raw_tail;
  if (tail.find("unknown") != std::string::npos) {
    out.verdict = ParsedAnswer::Verdict::kUnknown;
    return out;
  }

  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  const auto first = std::find_if(tail.begin(), tail.end(), is_digit);
  if (first == tail.end()) return out;
  size_t p = static_cast<size_t>(first - tail.begin());
  // "-5", "$5", "-$5" and "$-5" all read as signed amounts.
  bool negative = false;
  size_t back = p;
  if (back > 0 && tail[back - 1] == '-') {
    negative = true;
    --back;
  }
  if (back > 0 && tail[back - 1] == '$') --back;
  if (!negative && back > 0 && tail[back - 1] == '-') negative = true;

  std::string whole;
  std::string fraction;
  while (p < tail.size()) {
    const char c = tail[p];
    if (is_digit(c)) {
      whole += c;
    } else if (c == ',' && p + 1 < tail.size() && is_digit(tail[p + 1])) {
      // thousands separator
    } else {
      break;
    }
    ++p;
  }
  if (p + 1 < tail.size() && tail[p] == '.' && is_digit(tail[p + 1])) {
    for (++p; p < tail.size() && is_digit(tail[p]); ++p) fraction += tail[p];
  }
  if (std::any_of(fraction.begin(), fraction.end(), [](char c) { return c != '0'; })) return out;

  int64_t value = 0;
  for (char c : whole) {
    const int d = c - '0';
    if (value > (std::numeric_limits<int64_t>::max() - d) / 10) return out;
    value = value * 10 + d;
  }
  out.verdict = ParsedAnswer::Verdict::kNumber;
  out.value = negative ? -value : value;
  return out;
}

std::string_view ToString(Outcome o) {
  switch (o) {
    case Outcome::kCorrectUnanswerable: return "correct_unanswerable";
    case Outcome::kHallucination: return "hallucination";
    case Outcome::kCorrectAnswer: return "correct_answer";
    case Outcome::kWrongAnswer: return "wrong_answer";
    case Outcome::kFalseUnanswerable: return "false_unanswerable";
    case Outcome::kTransportFailed: return "transport_failed";
  }
  return "?";
}

std::optional<Outcome> ParseOutcome(std::string_view name) {
  for (Outcome o : {Outcome::kCorrectUnanswerable, Outcome::kHallucination,
                    Outcome::kCorrectAnswer, Outcome::kWrongAnswer, Outcome::kFalseUnanswerable,
                    Outcome::kTransportFailed}) {
    if (ToString(o) == name) return o;
  }
  return std::nullopt;
}

Outcome ScoreRecord(const ProblemInstance& instance, const ParsedAnswer& parsed) {
  using V = ParsedAnswer::Verdict;
  if (!instance.answerable()) {
    return parsed.verdict == V::kUnknown ? Outcome::kCorrectUnanswerable : Outcome::kHallucination;
  }
  switch (parsed.verdict) {
    case V::kUnknown: return Outcome::kFalseUnanswerable;
    case V::kNumber:
      return instance.gold_answer && parsed.value == *instance.gold_answer ? Outcome::kCorrectAnswer
                                                                           : Outcome::kWrongAnswer;
    case V::kUnparseable: return Outcome::kWrongAnswer;
  }
  return Outcome::kWrongAnswer;
}

std::string_view ToString(PromptMode m) { return m == PromptMode::kZeroShot ? "zero" : "few"; }

std::optional<PromptMode> ParsePromptMode(std::string_view name) {
  if (name == "zero") return PromptMode::kZeroShot;
  if (name == "few") return PromptMode::kFewShot;
  return std::nullopt;
}

EvalRecord Rescore(EvalRecord r) {
  if (r.transport_failed) {
    r.parsed = {};
    r.outcome = Outcome::kTransportFailed;
    r.unparseable = false;
    return r;
  }
  // Scoring only needs the variant and gold answer.
  ProblemInstance stub;
  stub.variant = r.variant;
  stub.gold_answer = r.gold_answer;
  r.parsed = ExtractAnswer(r.response_text);
  r.outcome = ScoreRecord(stub, r.parsed);
  r.unparseable = r.parsed.verdict == ParsedAnswer::Verdict::kUnparseable;
  return r;
}

EvalRecord MakeRecord(const ProblemInstance& instance, PromptMode mode, const QueryResult& result) {
  EvalRecord r;
  r.instance_id = instance.id;
  r.pair_id = instance.pair_id;
  r.variant = instance.variant;
  r.mode = mode;
  const GenConfig& c = instance.metadata.config;
  r.ans_depth = c.ans_depth;
  r.num_vars = c.num_vars;
  r.cut_depth = c.cut_depth;
  r.composite_name = c.composite_name;
  r.order = std::string(ToString(c.order));
  r.gold_answer = instance.gold_answer;
  r.transport_failed = result.failed;
  r.error = result.error;
  r.attempts = result.attempts;
  r.latency_ms = result.latency_ms;
  r.response_text = result.text;
  return Rescore(std::move(r));
}

std::vector<EvalRecord> RunEval(const std::vector<ProblemInstance>& instances,
                                const ModelProfile& profile, Transport& transport,
                                const EvalOptions& options) {
  std::vector<EvalRecord> records(instances.size());
  // Prompts are built up front so few-shot errors surface before any request.
  std::vector<PromptMessages> prompts;
  prompts.reserve(instances.size());
  for (const ProblemInstance& inst : instances) {
    if (options.mode == PromptMode::kFewShot) {
      SeededSource rng(DeriveSeed(options.seed, std::string_view(inst.id)));
      prompts.push_back(BuildFewShotPrompt(inst, options.pool, rng, profile));
    } else {
      prompts.push_back(BuildZeroShotPrompt(inst, profile));
    }
  }

  const int bound = options.concurrency > 0 ? options.concurrency : profile.concurrency;
  const size_t workers = std::clamp<size_t>(static_cast<size_t>(std::max(bound, 1)), 1,
                                            std::max<size_t>(instances.size(), 1));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k; (k = next.fetch_add(1)) < instances.size();) {
      const QueryResult result = QueryModel(profile, prompts[k], instances[k], transport);
      records[k] = MakeRecord(instances[k], options.mode, result);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

std::string ToJsonLine(const EvalRecord& r) {
  json j{{"schemaVersion", kSchemaVersion},
         {"instanceId", r.instance_id},
         {"pairId", r.pair_id},
         {"variant", ToString(r.variant)},
         {"mode", ToString(r.mode)},
         {"ansDepth", r.ans_depth},
         {"numVars", r.num_vars},
         {"cutDepth", r.cut_depth},
         {"compositeName", r.composite_name},
         {"order", r.order}};
  j["goldAnswer"] = r.gold_answer ? json(*r.gold_answer) : json(nullptr);
  j["verdict"] = ToString(r.parsed.verdict);
  j["parsedValue"] = r.parsed.value ? json(*r.parsed.value) : json(nullptr);
  j["rawTail"] = r.parsed.raw_tail;
  j["outcome"] = ToString(r.outcome);
  j["unparseable"] = r.unparseable;
  j["transportFailed"] = r.transport_failed;
  j["error"] = r.error;
  j["attempts"] = r.attempts;
  j["latencyMs"] = r.latency_ms;
  j["responseText"] = r.response_text;
  return j.dump();
}

EvalRecord RecordFromJsonLine(std::string_view line) {
  try {
    const json j = json::parse(line);
    EvalRecord r;
    r.instance_id = j.at("instanceId").get<std::string>();
    r.pair_id = j.at("pairId").get<std::string>();
    const std::string variant = j.at("variant").get<std::string>();
    if (variant != "answerable" && variant != "unanswerable") {
      Fail(ErrorCode::kParse, "unknown variant '" + variant + "'");
    }
    r.variant = variant == "answerable" ? Variant::kAnswerable : Variant::kUnanswerable;
    const auto mode = ParsePromptMode(j.at("mode").get<std::string>());
    if (!mode) Fail(ErrorCode::kParse, "unknown mode");
    r.mode = *mode;
    r.ans_depth = j.at("ansDepth").get<int>();
    r.num_vars = j.at("numVars").get<int>();
    r.cut_depth = j.at("cutDepth").get<int>();
    r.composite_name = j.at("compositeName").get<bool>();
    r.order = j.at("order").get<std::string>();
    if (!j.at("goldAnswer").is_null()) r.gold_answer = j.at("goldAnswer").get<int>();
    const std::string verdict = j.at("verdict").get<std::string>();
    r.parsed.verdict = verdict == "unknown"  ? ParsedAnswer::Verdict::kUnknown
                       : verdict == "number" ? ParsedAnswer::Verdict::kNumber
                                             : ParsedAnswer::Verdict::kUnparseable;
    if (!j.at("parsedValue").is_null()) r.parsed.value = j.at("parsedValue").get<int64_t>();
    r.parsed.raw_tail = j.at("rawTail").get<std::string>();
    const auto outcome = ParseOutcome(j.at("outcome").get<std::string>());
    if (!outcome) Fail(ErrorCode::kParse, "unknown outcome");
    r.outcome = *outcome;
    r.unparseable = j.at("unparseable").get<bool>();
    r.transport_failed = j.at("transportFailed").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.attempts = j.at("attempts").get<int>();
    r.latency_ms = j.at("latencyMs").get<double>();
    r.response_text = j.at("responseText").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad eval record: ") + e.what());
  }
}

void WriteRecords(std::ostream& out, const std::vector<EvalRecord>& records) {
  for (const EvalRecord& r : records) out << ToJsonLine(r) << '\n';
}

std::vector<EvalRecord> ReadRecords(std::istream& in) {
  std::vector<EvalRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(RecordFromJsonLine(line));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void SaveRecords(const std::vector<EvalRecord>& records, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  WriteRecords(out, records);
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path);
}

std::vector<EvalRecord> LoadRecords(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  return ReadRecords(in);
}

}  // namespace pricetree::eval

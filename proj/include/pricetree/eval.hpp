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

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pricetree/dataset.hpp"
#include "pricetree/error.hpp"

namespace pricetree::eval {

// ---------------------------------------------------------------------------
// Model profile and prompts
// ---------------------------------------------------------------------------

struct ModelProfile {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model;
  bool is_reasoning = false;
  // Non-reasoning decoding.
  int max_tokens = 4000;
  double temperature = 0.0;
  // Reasoning decoding.
  int max_completion_tokens = 32000;
  std::string reasoning_effort = "high";
  std::string api_key_env = "OPENAI_API_KEY";
  int concurrency = 8;
  int max_retries = 4;
  int backoff_initial_ms = 500;
  int backoff_max_ms = 16000;
  int timeout_s = 600;
};

// JSON object with the camelCase field names above; unknown keys rejected.
ModelProfile ParseProfile(std::string_view json_text);
ModelProfile LoadProfile(const std::string& path);

enum class Role { kSystem, kUser };

std::string_view ToString(Role r);

struct Message {
  Role role;
  std::string content;

  bool operator==(const Message&) const = default;
};

using PromptMessages = std::vector<Message>;

extern const char kSystemPrompt[];
extern const char kInstruction[];

PromptMessages BuildZeroShotPrompt(const ProblemInstance& instance, const ModelProfile& profile);

// Three answerable and three unanswerable exemplars, drawn without replacement
// from `pool` (excluding the target's pair), shuffled, then the target.
PromptMessages BuildFewShotPrompt(const ProblemInstance& instance,
                                  const std::vector<ProblemInstance>& pool, RandomSource& rng,
                                  const ModelProfile& profile);

// A held-out exemplar pool: for every distinct config among `targets`,
// `pairs_per_config` pairs generated from a seed derived from the config's
// corpus seed and the label "pool".
std::vector<ProblemInstance> BuildDefaultPool(const std::vector<ProblemInstance>& targets,
                                              int pairs_per_config = 20);

// ---------------------------------------------------------------------------
// Answer extraction and scoring
// ---------------------------------------------------------------------------

struct ParsedAnswer {
  enum class Verdict { kUnknown, kNumber, kUnparseable };

  Verdict verdict = Verdict::kUnparseable;
  std::optional<int64_t> value;  // set for kNumber
  std::string raw_tail;          // lowercased text after the last "answer"

  bool operator==(const ParsedAnswer&) const = default;
};

std::string_view ToString(ParsedAnswer::Verdict v);

// Lowercases, finds the last "answer"; "unknown" anywhere after it wins,
// otherwise the first number token after it must be an integer.
ParsedAnswer ExtractAnswer(std::string_view response);

enum class Outcome {
  kCorrectUnanswerable,
  kHallucination,
  kCorrectAnswer,
  kWrongAnswer,
  kFalseUnanswerable,
  kTransportFailed,
};

std::string_view ToString(Outcome o);
std::optional<Outcome> ParseOutcome(std::string_view name);

Outcome ScoreRecord(const ProblemInstance& instance, const ParsedAnswer& parsed);

// ---------------------------------------------------------------------------
// Transports
// ---------------------------------------------------------------------------

class TransportError : public Error {
 public:
  TransportError(const std::string& message, bool transient)
      : Error(ErrorCode::kTransport, message), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

// Implementations must be safe to call from several threads at once.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string Complete(const ModelProfile& profile, const PromptMessages& messages,
                               const ProblemInstance& instance) = 0;
};

// OpenAI-style chat-completion request body for a profile.
std::string BuildRequestBody(const ModelProfile& profile, const PromptMessages& messages);
// Text of the first choice's message. Throws TransportError (not transient).
std::string ParseResponseBody(std::string_view body);

class HttpTransport final : public Transport {
 public:
  std::string Complete(const ModelProfile& profile, const PromptMessages& messages,
                       const ProblemInstance& instance) override;
};

// JSONL of {"instanceId": ..., "responseText": ...}. An unknown id is a
// non-transient failure.
class ReplayTransport final : public Transport {
 public:
  explicit ReplayTransport(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}
  static ReplayTransport FromFile(const std::string& path);

  std::string Complete(const ModelProfile& profile, const PromptMessages& messages,
                       const ProblemInstance& instance) override;

 private:
  std::map<std::string, std::string> responses_;
};

// Canned behaviour for offline runs:
//   "unknown"   -> "Answer: unknown." for every instance
//   "number:N"  -> "Answer: N" for every instance
//   "oracle"    -> gold answer when answerable, "unknown" otherwise
class MockTransport final : public Transport {
 public:
  explicit MockTransport(std::string name);

  std::string Complete(const ModelProfile& profile, const PromptMessages& messages,
                       const ProblemInstance& instance) override;

 private:
  std::string name_;
  int64_t number_ = 0;
};

class FunctionTransport final : public Transport {
 public:
  using Fn = std::function<std::string(const PromptMessages&, const ProblemInstance&)>;
  explicit FunctionTransport(Fn fn) : fn_(std::move(fn)) {}

  std::string Complete(const ModelProfile&, const PromptMessages& messages,
                       const ProblemInstance& instance) override {
    return fn_(messages, instance);
  }

 private:
  Fn fn_;
};

// "live", "replay:<file>" or "mock:<name>".
std::unique_ptr<Transport> MakeTransport(std::string_view spec);

struct QueryResult {
  std::string text;
  bool failed = false;
  std::string error;
  int attempts = 0;
  double latency_ms = 0.0;
};

// Retries transient failures up to profile.max_retries times, sleeping
// min(initial * 2^k, max) between attempts.
QueryResult QueryModel(const ModelProfile& profile, const PromptMessages& messages,
                       const ProblemInstance& instance, Transport& transport);

// ---------------------------------------------------------------------------
// Records, runs and aggregation
// ---------------------------------------------------------------------------

enum class PromptMode { kZeroShot, kFewShot };

std::string_view ToString(PromptMode m);
std::optional<PromptMode> ParsePromptMode(std::string_view name);

struct EvalRecord {
  std::string instance_id;
  std::string pair_id;
  Variant variant = Variant::kUnanswerable;
  PromptMode mode = PromptMode::kZeroShot;
  int ans_depth = 0;
  int num_vars = 0;
  int cut_depth = 0;
  bool composite_name = false;
  std::string order;
  std::optional<int> gold_answer;
  ParsedAnswer parsed;
  Outcome outcome = Outcome::kHallucination;
  bool unparseable = false;
  bool transport_failed = false;
  std::string error;
  int attempts = 0;
  double latency_ms = 0.0;
  std::string response_text;  // verbatim

  bool operator==(const EvalRecord&) const = default;
};

// Scores a finished query against its instance.
EvalRecord MakeRecord(const ProblemInstance& instance, PromptMode mode, const QueryResult& result);

// Re-applies the scoring rule to a stored record's response text.
EvalRecord Rescore(EvalRecord record);

struct EvalOptions {
  PromptMode mode = PromptMode::kZeroShot;
  uint64_t seed = 0;  // few-shot exemplar draws
  std::vector<ProblemInstance> pool;
  // Overrides profile.concurrency when > 0.
  int concurrency = 0;
};

// Queries every instance with at most `concurrency` requests in flight.
// Records come back in instance order.
std::vector<EvalRecord> RunEval(const std::vector<ProblemInstance>& instances,
                                const ModelProfile& profile, Transport& transport,
                                const EvalOptions& options);

std::string ToJsonLine(const EvalRecord& record);
EvalRecord RecordFromJsonLine(std::string_view line);
void WriteRecords(std::ostream& out, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> ReadRecords(std::istream& in);
void SaveRecords(const std::vector<EvalRecord>& records, const std::string& path);
std::vector<EvalRecord> LoadRecords(const std::string& path);

// Exact count ratio; empty when the denominator is zero.
struct Rate {
  int64_t num = 0;
  int64_t den = 0;

  bool empty() const { return den == 0; }
  double value() const { return empty() ? 0.0 : static_cast<double>(num) / den; }
  // "64.0%" with round-half-up at one decimal, or "—" when empty.
  std::string Percent() const;
};

struct CellMetrics {
  std::vector<std::string> key;  // one value per group key
  int64_t n = 0;                 // scored records in the cell
  int64_t unanswerable = 0;
  int64_t hallucinations = 0;
  int64_t answerable = 0;
  int64_t correct = 0;
  int64_t wrong = 0;
  int64_t false_unanswerable = 0;
  int64_t unparseable = 0;  // answerable responses with no parseable answer
  int64_t excluded = 0;     // transport failures

  Rate hallucination_rate() const { return {hallucinations, unanswerable}; }
  Rate accuracy() const { return {correct, answerable}; }
  Rate false_unanswerable_rate() const { return {false_unanswerable, answerable}; }
};

struct MetricsTable {
  std::vector<std::string> group_by;
  std::vector<CellMetrics> cells;  // sorted by key, numeric keys numerically
};

// Valid keys: ansDepth, numVars, cutDepth, compositeName, order, mode, variant.
std::vector<std::string> ParseGroupKeys(std::string_view csv);

MetricsTable Aggregate(const std::vector<EvalRecord>& records,
                       const std::vector<std::string>& group_by);

std::string FormatTextTable(const MetricsTable& table);
std::string FormatJson(const MetricsTable& table);
std::string FormatCsv(const MetricsTable& table);

// Writes metrics.txt, metrics.json, metrics.csv for `group_by`, plus
// fig_structure.csv (ansDepth, numVars, compositeName) and fig_cutdepth.csv
// (ansDepth, cutDepth). Returns the text table.
std::string WriteReport(const std::vector<EvalRecord>& records,
                        const std::vector<std::string>& group_by, const std::string& out_dir);

}  // namespace pricetree::eval

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

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "pricetree/eval.hpp"

namespace pricetree::eval {

using json = nlohmann::ordered_json;

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint SplitEndpoint(const std::string& url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("endpoint '" + url + "' has no scheme", false);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool TransientStatus(int status) { return status == 408 || status == 409 || status == 429 || status >= 500; }

}  // namespace

std::string BuildRequestBody(const ModelProfile& profile, const PromptMessages& messages) {
  json msgs = json::array();
  for (const Message& m : messages) {
    msgs.push_back(json{{"role", ToString(m.role)}, {"content", m.content}});
  }
  json body{{"model", profile.model}, {"messages", std::move(msgs)}};
  if (profile.is_reasoning) {
    body["max_completion_tokens"] = profile.max_completion_tokens;
    body["reasoning_effort"] = profile.reasoning_effort;
  } else {
    body["max_tokens"] = profile.max_tokens;
    body["temperature"] = profile.temperature;
  }
  return body.dump();
}

std::string ParseResponseBody(std::string_view body) {
  try {
    const json j = json::parse(body);
    const json& content = j.at("choices").at(0).at("message").at("content");
    if (content.is_null()) return "";
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected response body: ") + e.what(), false);
  }
}

std::string HttpTransport::Complete(const ModelProfile& profile, const PromptMessages& messages,
                                    const ProblemInstance&) {
  const Endpoint ep = SplitEndpoint(profile.endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(30, 0);
  client.set_read_timeout(profile.timeout_s, 0);
  client.set_write_timeout(60, 0);
  httplib::Headers headers;
  if (!profile.api_key_env.empty()) {
    if (const char* key = std::getenv(profile.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  const auto res =
      client.Post(ep.path, headers, BuildRequestBody(profile, messages), "application/json");
  if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()), true);
  if (res->status != 200) {
    throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200),
                         TransientStatus(res->status));
  }
  return ParseResponseBody(res->body);
}

ReplayTransport ReplayTransport::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open replay file " + path);
  std::map<std::string, std::string> responses;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      responses[j.at("instanceId").get<std::string>()] = j.at("responseText").get<std::string>();
    } catch (const json::exception& e) {
      Fail(ErrorCode::kParse, path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return ReplayTransport(std::move(responses));
}

std::string ReplayTransport::Complete(const ModelProfile&, const PromptMessages&,
                                      const ProblemInstance& instance) {
  const auto it = responses_.find(instance.id);
  if (it == responses_.end()) {
    throw TransportError("no replay response for " + instance.id, false);
  }
  return it->second;
}

MockTransport::MockTransport(std::string name) : name_(std::move(name)) {
  if (name_ == "unknown" || name_ == "oracle") return;
  constexpr std::string_view kNumber = "number:";
  if (name_.starts_with(kNumber)) {
    const char* first = name_.data() + kNumber.size();
    const char* last = name_.data() + name_.size();
    const auto [ptr, ec] = std::from_chars(first, last, number_);
    if (ec == std::errc() && ptr == last && first != last) return;
  }
  Fail(ErrorCode::kInvalidConfig,
       "unknown mock '" + name_ + "' (expected unknown, oracle or number:<n>)");
}

std::string MockTransport::Complete(const ModelProfile&, const PromptMessages&,
                                    const ProblemInstance& instance) {
  if (name_ == "unknown") return "Answer: unknown.";
  if (name_ == "oracle") {
    return instance.gold_answer ? "Answer: " + std::to_string(*instance.gold_answer)
                                : "Answer: unknown.";
  }
  return "Answer: " + std::to_string(number_);
}

std::unique_ptr<Transport> MakeTransport(std::string_view spec) {
  if (spec == "live") return std::make_unique<HttpTransport>();
  if (spec.starts_with("replay:")) {
    return std::make_unique<ReplayTransport>(
        ReplayTransport::FromFile(std::string(spec.substr(7))));
  }
  if (spec.starts_with("mock:")) return std::make_unique<MockTransport>(std::string(spec.substr(5)));
  Fail(ErrorCode::kInvalidConfig, "unknown transport '" + std::string(spec) +
                                      "' (expected live, replay:<file> or mock:<name>)");
}

QueryResult QueryModel(const ModelProfile& profile, const PromptMessages& messages,
                       const ProblemInstance& instance, Transport& transport) {
  QueryResult result;
  const auto start = std::chrono::steady_clock::now();
  int delay_ms = profile.backoff_initial_ms;
  for (int attempt = 0;; ++attempt) {
    result.attempts = attempt + 1;
    try {
      result.text = transport.Complete(profile, messages, instance);
      result.failed = false;
      result.error.clear();
      break;
    } catch (const TransportError& e) {
      result.failed = true;
      result.error = e.what();
      if (!e.transient() || attempt >= profile.max_retries) break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    delay_ms = std::min(delay_ms * 2, profile.backoff_max_ms);
  }
  result.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace pricetree::eval

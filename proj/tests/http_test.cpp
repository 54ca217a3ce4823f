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


// Live transport against a local chat-completion stub.

#include <atomic>
#include <cstdlib>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "pricetree/eval.hpp"
#include "test_support.hpp"

namespace pricetree::eval {
namespace {

using json = nlohmann::json;

class StubServer {
 public:
  StubServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (failures_left_ > 0) {
        --failures_left_;
        res.status = status_on_failure_;
        res.set_content("try later", "text/plain");
        return;
      }
      const json body = json::parse(req.body);
      const json reply{{"choices",
                        {{{"index", 0},
                          {"message", {{"role", "assistant"},
                                       {"content", "echo " + body["model"].get<std::string>() +
                                                       "\nAnswer: unknown."}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::string last_body_, last_auth_;
  std::atomic<int> failures_left_{0};
  int status_on_failure_ = 503;
};

ModelProfile Profile(const std::string& endpoint) {
  ModelProfile p;
  p.endpoint = endpoint;
  p.model = "stub-model";
  p.api_key_env = "PRICETREE_TEST_KEY";
  p.backoff_initial_ms = 1;
  p.backoff_max_ms = 4;
  p.max_retries = 3;
  p.timeout_s = 10;
  return p;
}

ProblemInstance Target() {
  ScriptedSource rng(testing::BurgerDraws());
  return GeneratePair(testing::BurgerConfig(), 0, Vocabulary::Default(), rng).unanswerable;
}

TEST(HttpTransportTest, SendsWireRequestAndReadsReply) {
  StubServer stub;
  ::setenv("PRICETREE_TEST_KEY", "sk-test", 1);
  const ModelProfile p = Profile(stub.endpoint());
  const ProblemInstance t = Target();
  HttpTransport http;
  const QueryResult r = QueryModel(p, BuildZeroShotPrompt(t, p), t, http);
  ASSERT_FALSE(r.failed) << r.error;
  EXPECT_EQ(r.text, "echo stub-model\nAnswer: unknown.");
  EXPECT_EQ(stub.last_auth_, "Bearer sk-test");
  const json sent = json::parse(stub.last_body_);
  EXPECT_EQ(sent["model"], "stub-model");
  EXPECT_EQ(sent["temperature"], 0.0);
  EXPECT_EQ(sent["messages"].size(), 2u);
  EXPECT_NE(sent["messages"][1]["content"].get<std::string>().find(t.full_text), std::string::npos);
}

TEST(HttpTransportTest, RetriesServerErrors) {
  StubServer stub;
  stub.failures_left_ = 2;
  const ModelProfile p = Profile(stub.endpoint());
  HttpTransport http;
  const QueryResult r = QueryModel(p, {}, Target(), http);
  EXPECT_FALSE(r.failed) << r.error;
  EXPECT_EQ(r.attempts, 3);
}

TEST(HttpTransportTest, ClientErrorIsNotRetried) {
  StubServer stub;
  stub.failures_left_ = 5;
  stub.status_on_failure_ = 400;
  const ModelProfile p = Profile(stub.endpoint());
  HttpTransport http;
  const QueryResult r = QueryModel(p, {}, Target(), http);
  EXPECT_TRUE(r.failed);
  EXPECT_EQ(r.attempts, 1);
  EXPECT_NE(r.error.find("HTTP 400"), std::string::npos);
}

TEST(HttpTransportTest, UnreachableEndpointIsExcluded) {
  int port = 0;
  {
    StubServer probe;  // grab a free port, then release it
    port = probe.port_;
  }
  ModelProfile p = Profile("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions");
  p.max_retries = 1;
  HttpTransport http;
  const auto records = RunEval({Target()}, p, http, {});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].transport_failed);
  EXPECT_EQ(records[0].attempts, 2);
  EXPECT_EQ(Aggregate(records, {}).cells.at(0).excluded, 1);
}

}  // namespace
}  // namespace pricetree::eval

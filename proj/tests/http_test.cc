// Copyright 2026 The BAE Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Wire-protocol tests against an in-process server.

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "bae/errors.h"
#include "bae/http_backends.h"

namespace bae {
namespace {

using json = nlohmann::json;

class FakeModelServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/predict", [](const httplib::Request& req, httplib::Response& res) {
      const auto text = json::parse(req.body).at("text").get<std::string>();
      const double p = text.find("good") != std::string::npos ? 0.75 : 0.25;
      res.set_content(json{{"probs", {1.0 - p, p}}}.dump(), "application/json");
    });
    server_.Post("/mask", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      json preds = json::array();
      const char* words[] = {"fine", "nice", "ok"};
      for (std::size_t i = 0; i < std::min<std::size_t>(3, body.at("k")); ++i) {
        preds.push_back({{"word", words[i]}, {"score", 1.0 / (i + 1)}});
      }
      res.set_content(json{{"predictions", preds}}.dump(), "application/json");
    });
    server_.Post("/similarity", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body);
      res.set_content(json{{"similarity", body.at("a") == body.at("b") ? 1.0 : 0.5}}.dump(),
                      "application/json");
    });
    server_.Post("/tag", [](const httplib::Request& req, httplib::Response& res) {
      const json body = json::parse(req.body);
      json tags = json::array();
      for (const auto& t : body.at("tokens")) {
        tags.push_back(t == "good" ? "ADJ" : "NOUN");
      }
      res.set_content(json{{"tags", tags}}.dump(), "application/json");
    });
    server_.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  HttpEndpoint Endpoint() const { return {"http://127.0.0.1:" + std::to_string(port_), 5.0}; }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(FakeModelServer, Classifier) {
  HttpClassifier clf(Endpoint(), 2);
  EXPECT_DOUBLE_EQ(clf.Predict("so good").Prob(Label{1}), 0.75);
  EXPECT_EQ(clf.Predict("meh").Argmax(), Label{0});
  HttpClassifier wrong(Endpoint(), 3);
  EXPECT_THROW(wrong.Predict("x"), BackendError);
}

TEST_F(FakeModelServer, MaskedLM) {
  HttpMaskedLM mlm(Endpoint());
  const std::vector<std::string> tokens = {"it", "was", "[MASK]"};
  const auto preds = mlm.PredictMask(tokens, 2);
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(preds[0].word, "fine");
  EXPECT_DOUBLE_EQ(preds[1].score, 0.5);
}

TEST_F(FakeModelServer, EncoderAndTagger) {
  HttpEncoder enc(Endpoint());
  EXPECT_DOUBLE_EQ(enc.Similarity("a b", "a b"), 1.0);
  EXPECT_DOUBLE_EQ(enc.Similarity("a b", "a c"), 0.5);
  HttpPosTagger tagger(Endpoint());
  const std::vector<std::string> tokens = {"food", "good"};
  EXPECT_EQ(tagger.TagTokens(tokens), (std::vector<PosTag>{PosTag::kNoun, PosTag::kAdj}));
}

TEST_F(FakeModelServer, UnreachableServerIsABackendError) {
  server_.stop();
  thread_.join();
  thread_ = std::thread([] {});
  HttpClassifier clf(Endpoint(), 2);
  EXPECT_THROW(clf.Predict("x"), BackendError);
}

}  // namespace
}  // namespace bae

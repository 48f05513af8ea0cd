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

#include "bae/http_backends.h"

#include <algorithm>
#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "bae/errors.h"

namespace bae {
namespace {

using json = nlohmann::json;

// A fresh client per call keeps the adapters safe for concurrent use.
json Post(const HttpEndpoint& endpoint, const std::string& path, const json& body) {
  httplib::Client client(endpoint.base_url);
  const auto secs = static_cast<time_t>(endpoint.timeout_seconds);
  const auto usecs = static_cast<time_t>((endpoint.timeout_seconds - std::floor(endpoint.timeout_seconds)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw BackendError(endpoint.base_url + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError(endpoint.base_url + path + ": HTTP " + std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw BackendError(endpoint.base_url + path + ": malformed JSON: " + e.what());
  }
}

template <typename T>
T Field(const json& doc, const char* name, const std::string& where) {
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw BackendError(where + ": " + e.what());
  }
}

}  // namespace

ProbDist HttpClassifier::Predict(std::string_view text) const {
  const json doc = Post(endpoint_, "/predict", {{"text", text}});
  auto probs = Field<std::vector<double>>(doc, "probs", "/predict");
  if (probs.size() != static_cast<std::size_t>(num_classes_)) {
    throw BackendError("/predict returned " + std::to_string(probs.size()) + " classes");
  }
  try {
    return ProbDist::FromProbs(std::move(probs));
  } catch (const Error& e) {
    throw BackendError(std::string("/predict: ") + e.what());
  }
}

std::vector<ScoredWord> HttpMaskedLM::PredictMask(std::span<const std::string> tokens,
                                                  std::size_t k) const {
  const json doc = Post(endpoint_, "/mask",
                        {{"tokens", std::vector<std::string>(tokens.begin(), tokens.end())},
                         {"k", k}});
  std::vector<ScoredWord> out;
  try {
    for (const auto& p : doc.at("predictions")) {
      out.push_back({p.at("word").get<std::string>(), p.at("score").get<double>()});
    }
  } catch (const json::exception& e) {
    throw BackendError(std::string("/mask: ") + e.what());
  }
  return out;
}

double HttpEncoder::Similarity(std::string_view a, std::string_view b) const {
  const json doc = Post(endpoint_, "/similarity", {{"a", a}, {"b", b}});
  const double s = Field<double>(doc, "similarity", "/similarity");
  if (!(s >= -1.0 - 1e-6 && s <= 1.0 + 1e-6)) throw BackendError("/similarity out of range");
  return std::clamp(s, -1.0, 1.0);
}

std::vector<PosTag> HttpPosTagger::TagTokens(std::span<const std::string> tokens) const {
  const json doc = Post(endpoint_, "/tag",
                        {{"tokens", std::vector<std::string>(tokens.begin(), tokens.end())}});
  std::vector<PosTag> tags;
  for (const auto& name : Field<std::vector<std::string>>(doc, "tags", "/tag")) {
    tags.push_back(ParsePosTag(name).value_or(PosTag::kOther));
  }
  if (tags.size() != tokens.size()) throw BackendError("/tag returned wrong tag count");
  return tags;
}

}  // namespace bae

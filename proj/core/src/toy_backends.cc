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

#include "bae/toy_backends.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bae/errors.h"

namespace bae {
namespace {

using json = nlohmann::json;

constexpr std::string_view kFixtureSchema = "bae.toy_fixture/1";

std::set<std::string, std::less<>> TokenSet(std::string_view text) {
  std::set<std::string, std::less<>> out;
  try {
    const Sentence s = Tokenize(text);
    out.insert(s.tokens().begin(), s.tokens().end());
  } catch (const EmptyTextError&) {
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Coarse suffix heuristics for words missing from a lexicon.
PosTag GuessTag(std::string_view w) {
  auto ends = [&](std::string_view suf) {
    return w.size() > suf.size() + 2 && w.ends_with(suf);
  };
  if (ends("ly")) return PosTag::kAdv;
  if (ends("ing") || ends("ed") || ends("ize") || ends("ise")) {
    return PosTag::kVerb;
  }
  if (ends("ous") || ends("ful") || ends("ive") || ends("able") ||
      ends("ible") || ends("less") || ends("ic") || ends("al")) {
    return PosTag::kAdj;
  }
  if (ends("tion") || ends("ment") || ends("ness") || ends("ity") ||
      ends("er") || ends("ism")) {
    return PosTag::kNoun;
  }
  return PosTag::kOther;
}

}  // namespace

double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::pair<std::string, std::string> UnorderedPair(std::string_view a,
                                                  std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

void ToyFixture::Validate() const {
  for (const auto& [context, candidates] : mlm_table) {
    for (const auto& word : candidates) {
      if (!pos_table.contains(word)) {
        throw ConfigError("pos." + word,
                          "mlm candidate has no part-of-speech entry");
      }
      if (word == kMaskToken || word.empty()) {
        throw ConfigError("mlm", "invalid candidate '" + word + "'");
      }
    }
  }
}

ToyFixture ToyFixture::FromJson(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("fixture", e.what());
  }
  if (!doc.is_object()) throw ConfigError("fixture", "expected an object");
  if (doc.value("schema", std::string()) != kFixtureSchema) {
    throw ConfigError("fixture.schema",
                      "expected " + std::string(kFixtureSchema));
  }
  ToyFixture f;
  try {
    f.bias = doc.value("bias", 0.0);
    // value() returns by value; keep the sections alive while iterating.
    const json weights = doc.value("weights", json::object());
    const json mlm = doc.value("mlm", json::array());
    const json pos = doc.value("pos", json::object());
    const json antonyms = doc.value("antonyms", json::array());
    for (const auto& [word, w] : weights.items()) {
      f.weights[word] = w.get<double>();
    }
    for (const auto& entry : mlm) {
      auto key = std::make_pair(entry.at("left").get<std::string>(),
                                entry.at("right").get<std::string>());
      f.mlm_table[key] = entry.at("candidates").get<std::vector<std::string>>();
    }
    for (const auto& [word, tag] : pos.items()) {
      auto parsed = ParsePosTag(tag.get<std::string>());
      if (!parsed) throw ConfigError("fixture.pos." + word, "unknown tag");
      f.pos_table[word] = *parsed;
    }
    for (const auto& pair : antonyms) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigError("fixture.antonyms", "expected [word, word] pairs");
      }
      f.antonym_pairs.insert(UnorderedPair(pair[0].get<std::string>(),
                                           pair[1].get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ConfigError("fixture", e.what());
  }
  f.Validate();
  return f;
}

ToyFixture ToyFixture::Load(const std::filesystem::path& path) {
  return FromJson(ReadFile(path));
}

std::string ToyFixture::ToJson() const {
  json doc;
  doc["schema"] = kFixtureSchema;
  doc["bias"] = bias;
  doc["weights"] = json::object();
  for (const auto& [word, w] : weights) doc["weights"][word] = w;
  doc["mlm"] = json::array();
  for (const auto& [context, candidates] : mlm_table) {
    doc["mlm"].push_back({{"left", context.first},
                          {"right", context.second},
                          {"candidates", candidates}});
  }
  doc["pos"] = json::object();
  for (const auto& [word, tag] : pos_table) doc["pos"][word] = PosTagName(tag);
  doc["antonyms"] = json::array();
  for (const auto& [a, b] : antonym_pairs) doc["antonyms"].push_back({a, b});
  return doc.dump(2) + "\n";
}

Backends ToyFixture::MakeBackends() const {
  auto shared = std::make_shared<const ToyFixture>(*this);
  Backends b;
  b.classifier = std::make_shared<ToyClassifier>(shared);
  b.mlm = std::make_shared<ToyMaskedLM>(shared);
  b.encoder = std::make_shared<BowCosineEncoder>();
  b.pos = std::make_shared<LexiconPosTagger>(pos_table);
  b.antonyms = std::make_shared<PairAntonymLexicon>(antonym_pairs);
  return b;
}

double ToyClassifier::Score(std::span<const std::string> tokens) const {
  std::set<std::string_view> seen(tokens.begin(), tokens.end());
  double score = fixture_->bias;
  for (auto t : seen) {
    if (auto it = fixture_->weights.find(t); it != fixture_->weights.end()) {
      score += it->second;
    }
  }
  return score;
}

ProbDist ToyClassifier::Predict(std::string_view text) const {
  std::vector<std::string> tokens;
  try {
    tokens = Tokenize(text).tokens();
  } catch (const EmptyTextError&) {
  }
  const double p = Logistic(Score(tokens));
  return ProbDist::FromProbs({1.0 - p, p});
}

std::vector<ScoredWord> ToyMaskedLM::PredictMask(
    std::span<const std::string> tokens, std::size_t k) const {
  const auto mask = std::find(tokens.begin(), tokens.end(), kMaskToken);
  if (mask == tokens.end() ||
      std::count(tokens.begin(), tokens.end(), kMaskToken) != 1) {
    throw BackendError("input must contain exactly one mask");
  }
  const std::string left =
      mask == tokens.begin() ? std::string(kStartContext) : *(mask - 1);
  const std::string right =
      mask + 1 == tokens.end() ? std::string(kEndContext) : *(mask + 1);
  std::vector<ScoredWord> out;
  const auto it = fixture_->mlm_table.find({left, right});
  if (it == fixture_->mlm_table.end()) return out;
  for (std::size_t r = 0; r < it->second.size() && out.size() < k; ++r) {
    out.push_back({it->second[r], 1.0 / static_cast<double>(r + 1)});
  }
  return out;
}

double BowCosineEncoder::Similarity(std::string_view a,
                                    std::string_view b) const {
  const auto sa = TokenSet(a);
  const auto sb = TokenSet(b);
  if (sa.empty() || sb.empty()) return sa == sb ? 1.0 : 0.0;
  std::size_t shared = 0;
  for (const auto& t : sa) shared += sb.count(t);
  if (shared == sa.size() && shared == sb.size()) return 1.0;
  return static_cast<double>(shared) /
         std::sqrt(static_cast<double>(sa.size()) *
                   static_cast<double>(sb.size()));
}

std::vector<PosTag> LexiconPosTagger::TagTokens(
    std::span<const std::string> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto it = table_.find(t); it != table_.end()) {
      tags.push_back(it->second);
    } else {
      tags.push_back(suffix_fallback_ ? GuessTag(t) : PosTag::kOther);
    }
  }
  return tags;
}

LexiconPosTagger LexiconPosTagger::Load(const std::filesystem::path& path,
                                        bool suffix_fallback) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::map<std::string, PosTag, std::less<>> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto tab = trimmed.find('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "expected word<TAB>TAG");
    auto tag = ParsePosTag(Trim(trimmed.substr(tab + 1)));
    if (!tag) throw ParseError(line_no, "unknown tag");
    table[Trim(trimmed.substr(0, tab))] = *tag;
  }
  return LexiconPosTagger(std::move(table), suffix_fallback);
}

PairAntonymLexicon::PairAntonymLexicon(
    std::set<std::pair<std::string, std::string>> pairs) {
  for (const auto& [a, b] : pairs) pairs_.insert(UnorderedPair(a, b));
}

bool PairAntonymLexicon::AreAntonyms(std::string_view a,
                                     std::string_view b) const {
  return pairs_.contains(UnorderedPair(a, b));
}

PairAntonymLexicon PairAntonymLexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::set<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto tab = trimmed.find('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "expected word<TAB>word");
    pairs.insert(UnorderedPair(Trim(trimmed.substr(0, tab)),
                               Trim(trimmed.substr(tab + 1))));
  }
  return PairAntonymLexicon(std::move(pairs));
}

}  // namespace bae

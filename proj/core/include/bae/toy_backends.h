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

// Deterministic in-repo backends. The toy fixture is small enough that
// every engine decision can be checked by hand or by brute force.

#ifndef BAE_TOY_BACKENDS_H_
#define BAE_TOY_BACKENDS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bae/backends.h"

namespace bae {

// Context words used when the mask sits at a sentence boundary.
inline constexpr std::string_view kStartContext = "<start>";
inline constexpr std::string_view kEndContext = "<end>";

double Logistic(double x);

// Order-independent key for antonym pairs.
std::pair<std::string, std::string> UnorderedPair(std::string_view a,
                                                  std::string_view b);

struct ToyFixture {
  // Bag-of-words logistic model over two classes: P(class 1 | text) =
  // Logistic(bias + sum of weights of the distinct tokens present).
  double bias = 0.0;
  std::map<std::string, double, std::less<>> weights;
  // (left word, right word) of the mask -> ranked candidates.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      mlm_table;
  std::map<std::string, PosTag, std::less<>> pos_table;
  std::set<std::pair<std::string, std::string>> antonym_pairs;

  // Throws ConfigError if an MLM candidate lacks a POS entry.
  void Validate() const;

  static ToyFixture FromJson(std::string_view json_text);
  static ToyFixture Load(const std::filesystem::path& path);
  std::string ToJson() const;

  Backends MakeBackends() const;
};

class ToyClassifier : public ClassifierBackend {
 public:
  explicit ToyClassifier(std::shared_ptr<const ToyFixture> fixture)
      : fixture_(std::move(fixture)) {}
  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return 2; }
  // Bias plus weights of the distinct tokens in `tokens`.
  double Score(std::span<const std::string> tokens) const;

 private:
  std::shared_ptr<const ToyFixture> fixture_;
};

// Keys on the immediate (left, right) context of the mask. Scores are
// 1/(rank+1).
class ToyMaskedLM : public MaskedLMBackend {
 public:
  explicit ToyMaskedLM(std::shared_ptr<const ToyFixture> fixture)
      : fixture_(std::move(fixture)) {}
  std::vector<ScoredWord> PredictMask(std::span<const std::string> tokens,
                                      std::size_t k) const override;

 private:
  std::shared_ptr<const ToyFixture> fixture_;
};

// Cosine of binary bag-of-words indicator vectors over tokenized text.
class BowCosineEncoder : public SentenceEncoderBackend {
 public:
  double Similarity(std::string_view a, std::string_view b) const override;
};

// Word -> tag lookup. Unknown words are OTHER unless the suffix fallback is
// enabled.
class LexiconPosTagger : public PosTaggerBackend {
 public:
  explicit LexiconPosTagger(std::map<std::string, PosTag, std::less<>> table,
                            bool suffix_fallback = false)
      : table_(std::move(table)), suffix_fallback_(suffix_fallback) {}
  std::vector<PosTag> TagTokens(
      std::span<const std::string> tokens) const override;

  // Tab-separated "word<TAB>TAG" lines.
  static LexiconPosTagger Load(const std::filesystem::path& path,
                               bool suffix_fallback);

 private:
  std::map<std::string, PosTag, std::less<>> table_;
  bool suffix_fallback_;
};

class PairAntonymLexicon : public AntonymLexicon {
 public:
  PairAntonymLexicon() = default;
  explicit PairAntonymLexicon(std::set<std::pair<std::string, std::string>> pairs);
  bool AreAntonyms(std::string_view a, std::string_view b) const override;
  std::size_t size() const { return pairs_.size(); }

  // "word<TAB>word" lines; blank lines and '#' comments ignored.
  static PairAntonymLexicon Load(const std::filesystem::path& path);

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

}  // namespace bae

#endif  // BAE_TOY_BACKENDS_H_

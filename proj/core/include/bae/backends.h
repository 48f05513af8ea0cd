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

// Model dependencies of the attack. The engine only ever talks to these
// interfaces: a soft-label classifier, a masked language model, a sentence
// encoder, a coarse POS tagger and an antonym lexicon.

#ifndef BAE_BACKENDS_H_
#define BAE_BACKENDS_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bae/core.h"

namespace bae {

class ClassifierBackend {
 public:
  virtual ~ClassifierBackend() = default;
  virtual ProbDist Predict(std::string_view text) const = 0;
  virtual int num_classes() const = 0;
  // Backends that return false are only ever called from one thread.
  virtual bool concurrency_safe() const { return true; }
};

struct ScoredWord {
  std::string word;
  double score = 0.0;
  friend bool operator==(const ScoredWord&, const ScoredWord&) = default;
};

class MaskedLMBackend {
 public:
  virtual ~MaskedLMBackend() = default;
  // `tokens` holds exactly one kMaskToken. Returns at most k single-word
  // predictions with non-increasing scores, never the mask symbol itself.
  virtual std::vector<ScoredWord> PredictMask(
      std::span<const std::string> tokens, std::size_t k) const = 0;
  virtual bool concurrency_safe() const { return true; }
};

class SentenceEncoderBackend {
 public:
  virtual ~SentenceEncoderBackend() = default;
  // Cosine similarity in [-1,1]; symmetric, 1 on identical input.
  virtual double Similarity(std::string_view a, std::string_view b) const = 0;
  virtual bool concurrency_safe() const { return true; }
};

enum class PosTag { kNoun, kVerb, kAdj, kAdv, kOther };

std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

class PosTaggerBackend {
 public:
  virtual ~PosTaggerBackend() = default;
  // One tag per token.
  virtual std::vector<PosTag> TagTokens(
      std::span<const std::string> tokens) const = 0;
  std::vector<PosTag> Tag(const Sentence& sentence) const {
    return TagTokens(sentence.tokens());
  }
  virtual bool concurrency_safe() const { return true; }
};

class AntonymLexicon {
 public:
  virtual ~AntonymLexicon() = default;
  // Symmetric.
  virtual bool AreAntonyms(std::string_view a, std::string_view b) const = 0;
};

struct Backends {
  std::shared_ptr<const ClassifierBackend> classifier;
  std::shared_ptr<const MaskedLMBackend> mlm;
  std::shared_ptr<const SentenceEncoderBackend> encoder;
  std::shared_ptr<const PosTaggerBackend> pos;
  std::shared_ptr<const AntonymLexicon> antonyms;

  // Throws ConfigError naming the first missing section.
  void Validate() const;
  bool concurrency_safe() const;
};

// Forwards to another classifier and counts Predict() calls.
class CountingClassifier : public ClassifierBackend {
 public:
  explicit CountingClassifier(const ClassifierBackend& inner) : inner_(inner) {}
  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return inner_.num_classes(); }
  bool concurrency_safe() const override { return inner_.concurrency_safe(); }
  std::uint64_t queries() const { return queries_.load(); }

 private:
  const ClassifierBackend& inner_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace bae

#endif  // BAE_BACKENDS_H_

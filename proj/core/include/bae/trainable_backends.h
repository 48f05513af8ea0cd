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

// Lightweight backends trained in-process from a labelled corpus: a
// bag-of-words softmax classifier and a bigram-context masked LM. They let
// the full pipeline run on CPU without any pretrained checkpoint.

#ifndef BAE_TRAINABLE_BACKENDS_H_
#define BAE_TRAINABLE_BACKENDS_H_

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bae/backends.h"
#include "bae/ingestion.h"

namespace bae {

struct LogRegOptions {
  int epochs = 300;
  double learning_rate = 1.0;
  double l2 = 1e-4;
};

// Multinomial logistic regression over binary token-presence features,
// trained by full-batch gradient descent (deterministic).
class BowLogisticClassifier : public ClassifierBackend {
 public:
  static BowLogisticClassifier Train(const Dataset& train,
                                     const LogRegOptions& options = {});

  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return num_classes_; }

  // Fraction of `data` whose argmax prediction matches the label.
  double Accuracy(const Dataset& data) const;

 private:
  std::vector<std::size_t> Features(std::string_view text) const;

  int num_classes_ = 2;
  std::unordered_map<std::string, std::size_t> vocab_;
  // weights_[feature * num_classes + c]
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// Scores a filler w between context words l and r by
//   log P(w | l) + log P(r | w)
// from add-alpha smoothed bigram counts (sentence boundaries included).
// Punctuation-only words are never proposed.
class CorpusMaskedLM : public MaskedLMBackend {
 public:
  static CorpusMaskedLM Build(const std::vector<std::string>& texts,
                              double alpha = 0.1);

  std::vector<ScoredWord> PredictMask(std::span<const std::string> tokens,
                                      std::size_t k) const override;
  std::size_t vocab_size() const { return words_.size(); }

 private:
  double LogProb(std::size_t prev, std::size_t next) const;

  double alpha_ = 0.1;
  // words_[0] and words_[1] are the start and end markers.
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> unigram_;
  std::map<std::pair<std::size_t, std::size_t>, double> bigram_;
  std::vector<bool> proposable_;
};

}  // namespace bae

#endif  // BAE_TRAINABLE_BACKENDS_H_

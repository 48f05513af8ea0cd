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

#include "bae/trainable_backends.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "bae/errors.h"
#include "bae/toy_backends.h"

namespace bae {
namespace {

std::vector<std::string> SafeTokens(std::string_view text) {
  try {
    return Tokenize(text).tokens();
  } catch (const EmptyTextError&) {
    return {};
  }
}

void Softmax(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

bool IsPunctuationOnly(const std::string& w) {
  return std::all_of(w.begin(), w.end(), [](unsigned char c) {
    return c < 0x80 && std::ispunct(c);
  });
}

}  // namespace

BowLogisticClassifier BowLogisticClassifier::Train(const Dataset& train,
                                                   const LogRegOptions& options) {
  if (train.examples.empty()) throw ConfigError("classifier.train", "empty training set");
  BowLogisticClassifier m;
  m.num_classes_ = train.num_classes;
  std::set<std::string> words;
  std::vector<std::vector<std::string>> docs;
  for (const auto& ex : train.examples) {
    docs.push_back(SafeTokens(ex.text));
    words.insert(docs.back().begin(), docs.back().end());
  }
  for (const auto& w : words) m.vocab_.emplace(w, m.vocab_.size());
  const std::size_t c = static_cast<std::size_t>(m.num_classes_);
  m.weights_.assign(m.vocab_.size() * c, 0.0);
  m.bias_.assign(c, 0.0);

  std::vector<std::vector<std::size_t>> features;
  for (const auto& ex : train.examples) features.push_back(m.Features(ex.text));
  const double n = static_cast<double>(train.examples.size());

  std::vector<double> grad_w(m.weights_.size());
  std::vector<double> grad_b(c);
  std::vector<double> z(c);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    for (std::size_t i = 0; i < features.size(); ++i) {
      z = m.bias_;
      for (std::size_t f : features[i]) {
        for (std::size_t k = 0; k < c; ++k) z[k] += m.weights_[f * c + k];
      }
      Softmax(z);
      z[train.examples[i].label.class_index] -= 1.0;
      for (std::size_t k = 0; k < c; ++k) grad_b[k] += z[k];
      for (std::size_t f : features[i]) {
        for (std::size_t k = 0; k < c; ++k) grad_w[f * c + k] += z[k];
      }
    }
    for (std::size_t j = 0; j < m.weights_.size(); ++j) {
      m.weights_[j] -= options.learning_rate * (grad_w[j] / n + options.l2 * m.weights_[j]);
    }
    for (std::size_t k = 0; k < c; ++k) m.bias_[k] -= options.learning_rate * grad_b[k] / n;
  }
  return m;
}

std::vector<std::size_t> BowLogisticClassifier::Features(std::string_view text) const {
  std::vector<std::size_t> out;
  for (const auto& t : SafeTokens(text)) {
    if (auto it = vocab_.find(t); it != vocab_.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProbDist BowLogisticClassifier::Predict(std::string_view text) const {
  const std::size_t c = static_cast<std::size_t>(num_classes_);
  std::vector<double> z = bias_;
  for (std::size_t f : Features(text)) {
    for (std::size_t k = 0; k < c; ++k) z[k] += weights_[f * c + k];
  }
  Softmax(z);
  return ProbDist::Normalized(std::move(z));
}

double BowLogisticClassifier::Accuracy(const Dataset& data) const {
  if (data.examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : data.examples) correct += Predict(ex.text).Argmax() == ex.label;
  return static_cast<double>(correct) / static_cast<double>(data.examples.size());
}

CorpusMaskedLM CorpusMaskedLM::Build(const std::vector<std::string>& texts,
                                     double alpha) {
  CorpusMaskedLM lm;
  lm.alpha_ = alpha;
  std::set<std::string> vocab;
  std::vector<std::vector<std::string>> docs;
  for (const auto& t : texts) {
    docs.push_back(SafeTokens(t));
    vocab.insert(docs.back().begin(), docs.back().end());
  }
  lm.words_ = {std::string(kStartContext), std::string(kEndContext)};
  lm.words_.insert(lm.words_.end(), vocab.begin(), vocab.end());
  for (std::size_t i = 0; i < lm.words_.size(); ++i) lm.index_[lm.words_[i]] = i;
  lm.unigram_.assign(lm.words_.size(), 0.0);
  lm.proposable_.assign(lm.words_.size(), false);
  for (std::size_t i = 2; i < lm.words_.size(); ++i) {
    lm.proposable_[i] = !IsPunctuationOnly(lm.words_[i]) && lm.words_[i] != kMaskToken;
  }
  for (const auto& doc : docs) {
    std::size_t prev = 0;
    for (const auto& w : doc) {
      const std::size_t cur = lm.index_.at(w);
      lm.unigram_[prev] += 1.0;
      lm.bigram_[{prev, cur}] += 1.0;
      prev = cur;
    }
    lm.unigram_[prev] += 1.0;
    lm.bigram_[{prev, 1}] += 1.0;
  }
  return lm;
}

double CorpusMaskedLM::LogProb(std::size_t prev, std::size_t next) const {
  const auto it = bigram_.find({prev, next});
  const double count = it == bigram_.end() ? 0.0 : it->second;
  return std::log((count + alpha_) /
                  (unigram_[prev] + alpha_ * static_cast<double>(words_.size())));
}

std::vector<ScoredWord> CorpusMaskedLM::PredictMask(std::span<const std::string> tokens,
                                                    std::size_t k) const {
  const auto mask = std::find(tokens.begin(), tokens.end(), kMaskToken);
  if (mask == tokens.end() || std::count(tokens.begin(), tokens.end(), kMaskToken) != 1) {
    throw BackendError("input must contain exactly one mask");
  }
  auto lookup = [&](const std::string& w) -> std::optional<std::size_t> {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  };
  const auto left = mask == tokens.begin() ? std::optional<std::size_t>(0) : lookup(*(mask - 1));
  const auto right =
      mask + 1 == tokens.end() ? std::optional<std::size_t>(1) : lookup(*(mask + 1));

  std::vector<ScoredWord> scored;
  for (std::size_t w = 2; w < words_.size(); ++w) {
    if (!proposable_[w]) continue;
    // Unknown context words contribute a constant and are skipped.
    double s = 0.0;
    if (left) s += LogProb(*left, w);
    if (right) s += LogProb(w, *right);
    if (!left && !right) s = std::log(unigram_[w] + alpha_);
    scored.push_back({words_[w], s});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredWord& a, const ScoredWord& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace bae

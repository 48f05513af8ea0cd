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

#include "bae/importance.h"

#include <algorithm>
#include <numeric>

#include "bae/errors.h"

namespace bae {

ImportanceScores TokenImportance(const ClassifierBackend& classifier,
                                 const Sentence& sentence, Label label) {
  if (sentence.empty()) throw EmptyTextError();
  return TokenImportanceFrom(classifier, sentence, label,
                             classifier.Predict(sentence.Text()));
}

ImportanceScores TokenImportanceFrom(const ClassifierBackend& classifier,
                                     const Sentence& sentence, Label label,
                                     const ProbDist& base) {
  if (sentence.empty()) throw EmptyTextError();
  ImportanceScores out;
  out.base = base;
  out.queries = 1;
  const double p_full = base.Prob(label);
  out.scores.resize(sentence.size());
  if (sentence.size() == 1) {
    out.scores[0] = p_full - ProbDist::Uniform(classifier.num_classes()).Prob(label);
  } else {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      out.scores[i] = p_full - classifier.Predict(sentence.TextWithout(i)).Prob(label);
      ++out.queries;
    }
  }
  out.order = RankTokens(out.scores);
  return out;
}

std::vector<std::size_t> RankTokens(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace bae

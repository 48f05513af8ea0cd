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

#ifndef BAE_IMPORTANCE_H_
#define BAE_IMPORTANCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bae/backends.h"
#include "bae/core.h"

namespace bae {

struct ImportanceScores {
  // scores[i] = P(y | s) - P(y | s without token i).
  std::vector<double> scores;
  // Token indices by non-increasing score, ties by ascending index.
  std::vector<std::size_t> order;
  // Distribution on the unmodified sentence.
  ProbDist base;
  // Classifier calls spent, including the unmodified sentence.
  std::uint64_t queries = 0;
};

// Deletion probing: n+1 classifier calls for an n-token sentence. A
// one-token sentence is scored against the uniform distribution instead of
// querying empty text.
ImportanceScores TokenImportance(const ClassifierBackend& classifier,
                                 const Sentence& sentence, Label label);

// Same, reusing an already-computed distribution for the full sentence.
// `queries` in the result still counts that first call.
ImportanceScores TokenImportanceFrom(const ClassifierBackend& classifier,
                                     const Sentence& sentence, Label label,
                                     const ProbDist& base);

std::vector<std::size_t> RankTokens(std::span<const double> scores);

}  // namespace bae

#endif  // BAE_IMPORTANCE_H_

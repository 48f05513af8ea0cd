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

// Mask construction, masked-LM candidate generation and the candidate
// filter pipeline.
//
// Filter stages run in a fixed order and each removal is counted:
//   1. degenerate: Replace candidates equal to the original token; Insert
//      candidates duplicating an adjacent token; repeated words.
//   2. stop words.
//   3. part of speech (Replace only): the candidate's tag in context must
//      match the original token's tag.
//   4. antonyms (sentiment tasks only): keyed on the replaced token, or on
//      both neighbours of an insertion.
//   5. similarity of the full perturbed sentence to the ORIGINAL input must
//      reach the configured threshold.

#ifndef BAE_PERTURB_H_
#define BAE_PERTURB_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bae/attack_config.h"
#include "bae/backends.h"
#include "bae/core.h"

namespace bae {

struct Candidate {
  std::string word;
  double mlm_score = 0.0;
  PerturbationOp op;
  // ApplyPerturbation(current sentence, op).
  Sentence sentence;
  double similarity = 0.0;
};

struct CandidateSet {
  std::size_t position = 0;
  OpKind kind = OpKind::kReplace;
  // In MLM rank order.
  std::vector<Candidate> candidates;
  FilterProvenance provenance;
};

// Token list with exactly one kMaskToken. Throws PositionResolutionError.
std::vector<std::string> MakeMasked(const Sentence& sentence,
                                    std::size_t position, OpKind kind);

// At most k predictions, scores non-increasing. Predictions that are the
// mask symbol or not a single word are dropped. Throws BackendError if the
// model breaks the ordering contract.
std::vector<ScoredWord> GenerateCandidates(const MaskedLMBackend& mlm,
                                           const Sentence& sentence,
                                           std::size_t position, OpKind kind,
                                           std::size_t k);

struct FilterBackends {
  const PosTaggerBackend& pos;
  const AntonymLexicon& antonyms;
  const SentenceEncoderBackend& encoder;
};

CandidateSet FilterCandidates(std::span<const ScoredWord> raw,
                              const Sentence& original, const Sentence& current,
                              std::size_t position, OpKind kind,
                              const AttackConfig& config,
                              const FilterBackends& backends);

}  // namespace bae

#endif  // BAE_PERTURB_H_

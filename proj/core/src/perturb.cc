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

#include "bae/perturb.h"

#include <algorithm>
#include <set>

#include "bae/errors.h"

namespace bae {
namespace {

bool IsSingleWord(const std::string& w) {
  return !w.empty() && std::none_of(w.begin(), w.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

// Tokens on either side of the slot an insertion would occupy.
std::vector<std::string> InsertNeighbours(const Sentence& s, std::size_t index,
                                          OpKind kind) {
  std::vector<std::string> out;
  if (kind == OpKind::kInsertLeft) {
    if (index > 0) out.push_back(s[index - 1]);
    out.push_back(s[index]);
  } else {
    out.push_back(s[index]);
    if (index + 1 < s.size()) out.push_back(s[index + 1]);
  }
  return out;
}

}  // namespace

std::vector<std::string> MakeMasked(const Sentence& sentence,
                                    std::size_t position, OpKind kind) {
  const auto index = sentence.Resolve(position);
  if (!index) throw PositionResolutionError(position);
  std::vector<std::string> tokens = sentence.tokens();
  const std::string mask(kMaskToken);
  switch (kind) {
    case OpKind::kReplace:
      tokens[*index] = mask;
      break;
    case OpKind::kInsertLeft:
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(*index), mask);
      break;
    case OpKind::kInsertRight:
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(*index) + 1,
                    mask);
      break;
  }
  return tokens;
}

std::vector<ScoredWord> GenerateCandidates(const MaskedLMBackend& mlm,
                                           const Sentence& sentence,
                                           std::size_t position, OpKind kind,
                                           std::size_t k) {
  const auto masked = MakeMasked(sentence, position, kind);
  if (k == 0) return {};
  std::vector<ScoredWord> raw = mlm.PredictMask(masked, k);
  if (raw.size() > k) raw.resize(k);
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].score > raw[i - 1].score) {
      throw BackendError("masked LM scores are not non-increasing");
    }
  }
  std::erase_if(raw, [](const ScoredWord& w) {
    return w.word == kMaskToken || !IsSingleWord(w.word);
  });
  return raw;
}

CandidateSet FilterCandidates(std::span<const ScoredWord> raw,
                              const Sentence& original, const Sentence& current,
                              std::size_t position, OpKind kind,
                              const AttackConfig& config,
                              const FilterBackends& backends) {
  const auto index = current.Resolve(position);
  if (!index) throw PositionResolutionError(position);

  CandidateSet out;
  out.position = position;
  out.kind = kind;
  const bool replace = kind == OpKind::kReplace;
  const std::string& target = current[*index];
  const auto neighbours =
      replace ? std::vector<std::string>{} : InsertNeighbours(current, *index, kind);

  std::vector<PosTag> current_tags;
  if (replace) current_tags = backends.pos.Tag(current);
  const std::string original_text = original.Text();

  std::set<std::string, std::less<>> seen;
  for (const auto& sw : raw) {
    const std::string& w = sw.word;
    // 1. degenerate
    const bool duplicate = !seen.insert(w).second;
    if (duplicate || (replace && w == target) ||
        (!replace && std::find(neighbours.begin(), neighbours.end(), w) !=
                         neighbours.end())) {
      ++out.provenance.degenerate;
      continue;
    }
    // 2. stop words
    if (config.stop_words->Contains(w)) {
      ++out.provenance.stop_word;
      continue;
    }
    Candidate c;
    c.word = w;
    c.mlm_score = sw.score;
    c.op.kind = kind;
    c.op.position = position;
    if (replace) c.op.original_token = target;
    c.op.new_token = w;
    c.sentence = ApplyPerturbation(current, c.op);
    // 3. part of speech
    if (replace) {
      const auto tags = backends.pos.Tag(c.sentence);
      if (tags.size() != c.sentence.size()) {
        throw BackendError("POS tagger returned the wrong number of tags");
      }
      if (tags[*index] != current_tags[*index]) {
        ++out.provenance.part_of_speech;
        continue;
      }
    }
    // 4. antonyms
    if (config.sentiment_task) {
      const bool antonym =
          replace ? backends.antonyms.AreAntonyms(target, w)
                  : std::any_of(neighbours.begin(), neighbours.end(),
                                [&](const std::string& n) {
                                  return backends.antonyms.AreAntonyms(n, w);
                                });
      if (antonym) {
        ++out.provenance.antonym;
        continue;
      }
    }
    // 5. similarity to the original input
    c.similarity = backends.encoder.Similarity(original_text, c.sentence.Text());
    if (!(c.similarity >= config.sim_threshold)) {
      ++out.provenance.similarity;
      continue;
    }
    out.candidates.push_back(std::move(c));
  }
  return out;
}

}  // namespace bae

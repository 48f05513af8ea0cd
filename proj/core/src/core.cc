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

#include "bae/core.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "bae/errors.h"

namespace bae {
namespace {

constexpr double kProbTolerance = 1e-6;

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// ASCII punctuation only; bytes >= 0x80 are treated as word characters so
// UTF-8 sequences stay intact.
bool IsPunct(unsigned char c) {
  return c < 0x80 && std::ispunct(c) != 0;
}

char ToLower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

// Splits one whitespace-delimited chunk. Leading and trailing punctuation
// characters become single-character tokens; interior punctuation (don't,
// e-mail, 3.5) stays inside the word.
void SplitChunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && IsPunct(chunk[begin])) {
    out.emplace_back(1, chunk[begin]);
    ++begin;
  }
  std::size_t core_end = end;
  while (core_end > begin && IsPunct(chunk[core_end - 1])) --core_end;
  if (core_end > begin) {
    std::string word;
    word.reserve(core_end - begin);
    for (std::size_t i = begin; i < core_end; ++i) word += ToLower(chunk[i]);
    out.push_back(std::move(word));
  }
  for (std::size_t i = core_end; i < end; ++i) out.emplace_back(1, chunk[i]);
}

}  // namespace

ProbDist ProbDist::FromProbs(std::vector<double> probs) {
  if (probs.size() < 2) throw Error("distribution needs at least 2 classes");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw Error("probabilities sum to " + std::to_string(sum));
  }
  return ProbDist(std::move(probs));
}

ProbDist ProbDist::Normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error("negative weight");
    sum += w;
  }
  if (!(sum > 0.0)) throw Error("weights sum to zero");
  for (double& w : weights) w /= sum;
  return FromProbs(std::move(weights));
}

ProbDist ProbDist::Uniform(int num_classes) {
  if (num_classes < 2) throw Error("num_classes must be >= 2");
  return ProbDist(std::vector<double>(num_classes, 1.0 / num_classes));
}

double ProbDist::Prob(Label label) const {
  if (label.class_index < 0 ||
      static_cast<std::size_t>(label.class_index) >= probs_.size()) {
    throw Error("label outside distribution");
  }
  return probs_[label.class_index];
}

Label ProbDist::Argmax() const {
  auto it = std::max_element(probs_.begin(), probs_.end());
  return Label{static_cast<int>(it - probs_.begin())};
}

Sentence::Sentence(std::vector<std::string> tokens, std::string raw_text)
    : tokens_(std::move(tokens)),
      raw_text_(std::move(raw_text)),
      origin_(tokens_.size()),
      original_size_(tokens_.size()) {
  for (std::size_t i = 0; i < origin_.size(); ++i) origin_[i] = i;
}

Sentence Sentence::FromParts(std::vector<std::string> tokens,
                             std::string raw_text,
                             std::vector<std::optional<std::size_t>> origin) {
  if (origin.size() != tokens.size()) {
    throw Error("origin map length differs from token count");
  }
  std::size_t originals = 0;
  std::optional<std::size_t> last;
  for (const auto& o : origin) {
    if (!o) continue;
    if (last && *o <= *last) {
      throw Error("origin map is not strictly increasing");
    }
    last = o;
    ++originals;
  }
  Sentence s;
  s.tokens_ = std::move(tokens);
  s.raw_text_ = std::move(raw_text);
  s.origin_ = std::move(origin);
  // Perturbation never deletes, so every original index survives.
  s.original_size_ = originals;
  if (last && *last + 1 != originals) {
    throw Error("origin map skips original positions");
  }
  return s;
}

std::optional<std::size_t> Sentence::Resolve(std::size_t position) const {
  for (std::size_t i = 0; i < origin_.size(); ++i) {
    if (origin_[i] && *origin_[i] == position) return i;
  }
  return std::nullopt;
}

std::string Sentence::Text() const { return Detokenize(tokens_); }

std::string Sentence::TextWithout(std::size_t index) const {
  std::vector<std::string> rest;
  rest.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i != index) rest.push_back(tokens_[i]);
  }
  return Detokenize(rest);
}

std::string_view OpKindName(OpKind kind) {
  switch (kind) {
    case OpKind::kReplace:
      return "replace";
    case OpKind::kInsertLeft:
      return "insert_left";
    case OpKind::kInsertRight:
      return "insert_right";
  }
  return "?";
}

std::optional<OpKind> ParseOpKind(std::string_view name) {
  for (OpKind k : {OpKind::kReplace, OpKind::kInsertLeft, OpKind::kInsertRight}) {
    if (OpKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view AttackModeName(AttackMode mode) {
  switch (mode) {
    case AttackMode::kReplace:
      return "R";
    case AttackMode::kInsert:
      return "I";
    case AttackMode::kReplaceOrInsert:
      return "R/I";
    case AttackMode::kReplaceThenInsert:
      return "R+I";
  }
  return "?";
}

std::optional<AttackMode> ParseAttackMode(std::string_view name) {
  for (AttackMode m : {AttackMode::kReplace, AttackMode::kInsert,
                       AttackMode::kReplaceOrInsert,
                       AttackMode::kReplaceThenInsert}) {
    if (AttackModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view AttackStatusName(AttackStatus status) {
  switch (status) {
    case AttackStatus::kSuccess:
      return "success";
    case AttackStatus::kFailure:
      return "failure";
    case AttackStatus::kSkippedAlreadyMisclassified:
      return "skipped_already_misclassified";
  }
  return "?";
}

std::optional<AttackStatus> ParseAttackStatus(std::string_view name) {
  for (AttackStatus s : {AttackStatus::kSuccess, AttackStatus::kFailure,
                         AttackStatus::kSkippedAlreadyMisclassified}) {
    if (AttackStatusName(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kFlipped:
      return "flipped";
    case StopReason::kExhausted:
      return "exhausted";
    case StopReason::kPerturbationBudget:
      return "perturbation_budget";
    case StopReason::kQueryBudget:
      return "query_budget";
    case StopReason::kAlreadyMisclassified:
      return "already_misclassified";
    case StopReason::kError:
      return "error";
  }
  return "?";
}

std::optional<StopReason> ParseStopReason(std::string_view name) {
  for (StopReason r :
       {StopReason::kFlipped, StopReason::kExhausted,
        StopReason::kPerturbationBudget, StopReason::kQueryBudget,
        StopReason::kAlreadyMisclassified, StopReason::kError}) {
    if (StopReasonName(r) == name) return r;
  }
  return std::nullopt;
}

FilterProvenance& FilterProvenance::operator+=(const FilterProvenance& other) {
  degenerate += other.degenerate;
  stop_word += other.stop_word;
  part_of_speech += other.part_of_speech;
  antonym += other.antonym;
  similarity += other.similarity;
  return *this;
}

Sentence Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) SplitChunk(text.substr(start, i - start), tokens);
  }
  if (tokens.empty()) throw EmptyTextError();
  return Sentence(std::move(tokens), std::string(text));
}

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

Sentence ApplyPerturbation(const Sentence& sentence, const PerturbationOp& op) {
  if (op.position >= sentence.original_size()) {
    throw PositionResolutionError(op.position);
  }
  if (op.new_token.empty() ||
      std::any_of(op.new_token.begin(), op.new_token.end(),
                  [](char c) { return IsSpace(c); })) {
    throw InvalidPerturbationError("new token must be a single word");
  }
  const std::optional<std::size_t> index = sentence.Resolve(op.position);
  if (!index) throw PositionResolutionError(op.position);

  Sentence out = sentence;
  switch (op.kind) {
    case OpKind::kReplace:
      if (!op.original_token) {
        throw InvalidPerturbationError("replace requires the original token");
      }
      if (*op.original_token == op.new_token) {
        throw InvalidPerturbationError("replace must change the token");
      }
      if (sentence[*index] != *op.original_token) {
        throw InvalidPerturbationError("replace original token '" +
                                       *op.original_token +
                                       "' does not match '" +
                                       sentence[*index] + "'");
      }
      out.tokens_[*index] = op.new_token;
      break;
    case OpKind::kInsertLeft:
    case OpKind::kInsertRight: {
      if (op.original_token) {
        throw InvalidPerturbationError("insert carries no original token");
      }
      const std::size_t at =
          op.kind == OpKind::kInsertLeft ? *index : *index + 1;
      out.tokens_.insert(out.tokens_.begin() + static_cast<std::ptrdiff_t>(at),
                         op.new_token);
      out.origin_.insert(out.origin_.begin() + static_cast<std::ptrdiff_t>(at),
                         std::nullopt);
      break;
    }
  }
  return out;
}

Sentence ReplayOps(const Sentence& original,
                   std::span<const PerturbationOp> ops) {
  Sentence current = original;
  for (const auto& op : ops) current = ApplyPerturbation(current, op);
  return current;
}

double PerturbationRatio(const AttackResult& result) {
  if (result.original.empty()) return 0.0;
  return static_cast<double>(result.ops_applied.size()) /
         static_cast<double>(result.original.size());
}

}  // namespace bae

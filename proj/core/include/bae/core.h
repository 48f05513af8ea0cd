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

// Domain types shared by every stage of the attack pipeline: word-level
// sentences with provenance back to the original tokens, class labels,
// probability distributions, perturbation operations and attack outcomes.

#ifndef BAE_CORE_H_
#define BAE_CORE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bae {

// Placeholder token handed to masked language models.
inline constexpr std::string_view kMaskToken = "[MASK]";

struct Label {
  int class_index = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

// Output distribution of a classifier: one probability per class.
class ProbDist {
 public:
  ProbDist() = default;

  // Validates entries in [0,1] summing to 1 within 1e-6. Throws Error.
  static ProbDist FromProbs(std::vector<double> probs);
  // Normalizes non-negative weights. Throws Error on all-zero input.
  static ProbDist Normalized(std::vector<double> weights);
  static ProbDist Uniform(int num_classes);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double Prob(Label label) const;
  // Index of the most probable class; ties resolve to the lowest index.
  Label Argmax() const;
  const std::vector<double>& probs() const { return probs_; }

  friend bool operator==(const ProbDist&, const ProbDist&) = default;

 private:
  explicit ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

struct PerturbationOp;

// A tokenized sentence. origin()[i] names the original-token index that
// token i derives from, or nullopt for tokens introduced by insertion.
class Sentence {
 public:
  Sentence() = default;
  // Builds an unperturbed sentence; origin map is the identity.
  Sentence(std::vector<std::string> tokens, std::string raw_text);
  // Restores a sentence from serialized parts. Validates the origin map.
  static Sentence FromParts(std::vector<std::string> tokens,
                            std::string raw_text,
                            std::vector<std::optional<std::size_t>> origin);

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& raw_text() const { return raw_text_; }
  const std::vector<std::optional<std::size_t>>& origin() const {
    return origin_;
  }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }

  // Number of tokens in the sentence this one was derived from.
  std::size_t original_size() const { return original_size_; }

  // Current index of the token derived from original position `position`.
  std::optional<std::size_t> Resolve(std::size_t position) const;

  // Space-joined tokens. This is the text every backend sees.
  std::string Text() const;

  // Text with token `index` removed.
  std::string TextWithout(std::size_t index) const;

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::vector<std::string> tokens_;
  std::string raw_text_;
  std::vector<std::optional<std::size_t>> origin_;
  std::size_t original_size_ = 0;

  friend Sentence ApplyPerturbation(const Sentence&, const PerturbationOp&);
};

enum class OpKind { kReplace, kInsertLeft, kInsertRight };

std::string_view OpKindName(OpKind kind);
std::optional<OpKind> ParseOpKind(std::string_view name);

struct PerturbationOp {
  OpKind kind = OpKind::kReplace;
  // Index into the original sentence's tokens.
  std::size_t position = 0;
  // Present for kReplace only.
  std::optional<std::string> original_token;
  std::string new_token;

  friend bool operator==(const PerturbationOp&, const PerturbationOp&) = default;
};

enum class AttackMode { kReplace, kInsert, kReplaceOrInsert, kReplaceThenInsert };

// "R", "I", "R/I", "R+I".
std::string_view AttackModeName(AttackMode mode);
std::optional<AttackMode> ParseAttackMode(std::string_view name);

enum class AttackStatus { kSuccess, kFailure, kSkippedAlreadyMisclassified };

std::string_view AttackStatusName(AttackStatus status);
std::optional<AttackStatus> ParseAttackStatus(std::string_view name);

enum class StopReason {
  kFlipped,
  kExhausted,
  kPerturbationBudget,
  kQueryBudget,
  kAlreadyMisclassified,
  kError,
};

std::string_view StopReasonName(StopReason reason);
std::optional<StopReason> ParseStopReason(std::string_view name);

// Candidates removed at each filter stage.
struct FilterProvenance {
  std::uint64_t degenerate = 0;
  std::uint64_t stop_word = 0;
  std::uint64_t part_of_speech = 0;
  std::uint64_t antonym = 0;
  std::uint64_t similarity = 0;

  FilterProvenance& operator+=(const FilterProvenance& other);
  friend bool operator==(const FilterProvenance&, const FilterProvenance&) = default;
};

struct AttackResult {
  std::string example_id;
  AttackStatus status = AttackStatus::kFailure;
  StopReason stop_reason = StopReason::kExhausted;
  Sentence original;
  Sentence adversarial;
  Label label;
  Label predicted;
  std::vector<PerturbationOp> ops_applied;
  double similarity = 1.0;
  std::uint64_t queries = 0;
  ProbDist final_probs;
  FilterProvenance provenance;
  // Applied non-flipping ops that raised P(label) instead of lowering it.
  std::uint64_t negative_reduction_steps = 0;
  // Set when a backend failed mid-attack; status is then kFailure.
  std::optional<std::string> error;

  friend bool operator==(const AttackResult&, const AttackResult&) = default;
};

// Lowercased word split on whitespace with punctuation as separate tokens.
// Throws EmptyTextError when nothing survives.
Sentence Tokenize(std::string_view text);

std::string Detokenize(std::span<const std::string> tokens);

// Pure; throws PositionResolutionError or InvalidPerturbationError.
Sentence ApplyPerturbation(const Sentence& sentence, const PerturbationOp& op);

// Replays `ops` in order on `original`.
Sentence ReplayOps(const Sentence& original, std::span<const PerturbationOp> ops);

// |ops_applied| / original token count.
double PerturbationRatio(const AttackResult& result);

}  // namespace bae

#endif  // BAE_CORE_H_

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

// Greedy masked-LM attack.
//
// Original token positions are visited once each, in descending deletion
// importance computed on the unmodified sentence. At every position the
// mode's candidate sets are generated, filtered and scored with the
// classifier:
//   - if some candidate flips the label, the flipping candidate most similar
//     to the original input is applied and the attack succeeds;
//   - otherwise the candidate that minimises P(label) is applied (even when
//     it raises P(label)) and the walk continues.
// Ties break on higher MLM score, then lexicographically smaller word, then
// Replace < InsertLeft < InsertRight.
//
// Modes: R replaces; I inserts left or right; R/I picks the best of all
// three kinds; R+I runs the R step and, without a flip, applies it and then
// runs the I step at the same position on the updated sentence.

#ifndef BAE_ATTACK_H_
#define BAE_ATTACK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bae/attack_config.h"
#include "bae/backends.h"
#include "bae/core.h"
#include "bae/importance.h"
#include "bae/ingestion.h"
#include "bae/perturb.h"

namespace bae {

struct EvaluatedCandidate {
  Candidate candidate;
  ProbDist probs;
  bool flips = false;
};

// One greedy decision. R+I produces two steps per position.
struct StepOutcome {
  std::size_t position = 0;
  Sentence before;
  std::vector<EvaluatedCandidate> evaluated;
  // Index into `evaluated` of the applied candidate.
  std::optional<std::size_t> chosen;
  FilterProvenance provenance;
  // Set when the attack ended during or right after this step.
  std::optional<StopReason> stop_reason;
};

struct AttackTrace {
  ImportanceScores importance;
  std::vector<StepOutcome> steps;
};

// Orders candidates for selection; true when `a` should be picked over `b`.
bool PreferFlipping(const EvaluatedCandidate& a, const EvaluatedCandidate& b);
bool PreferReducing(const EvaluatedCandidate& a, const EvaluatedCandidate& b,
                    Label label);

// Throws BackendError from any backend.
AttackResult Attack(const Backends& backends, const Sentence& sentence,
                    Label label, const AttackConfig& config,
                    AttackTrace* trace = nullptr);

// Probes the classifier the way Attack() does before its main loop: one call
// on the full sentence and, when it is classified correctly, one per
// deletion. Reusable across runs that differ only in budgets.
ImportanceScores ProbeImportance(const ClassifierBackend& classifier,
                                 const Sentence& sentence, Label label);

// Attack() with importance supplied. The probe's queries are counted as if
// they were issued by this call, so results equal a fresh Attack().
AttackResult AttackWithImportance(const Backends& backends,
                                  const Sentence& sentence, Label label,
                                  const AttackConfig& config,
                                  const ImportanceScores& importance,
                                  AttackTrace* trace = nullptr);

// One result per example, in dataset order. Per-example failures are
// recorded in AttackResult::error. `jobs` > 1 attacks sentences in parallel
// when every backend is concurrency-safe.
std::vector<AttackResult> AttackCorpus(const Backends& backends,
                                       const Dataset& dataset,
                                       const AttackConfig& config,
                                       int jobs = 1);

// One AttackCorpus run per cap (ascending) with max_perturb_ratio set;
// importance is probed once per example and shared.
std::vector<std::vector<AttackResult>> CappedSweep(const Backends& backends,
                                                   const Dataset& dataset,
                                                   const AttackConfig& config,
                                                   std::span<const double> caps,
                                                   int jobs = 1);

}  // namespace bae

#endif  // BAE_ATTACK_H_

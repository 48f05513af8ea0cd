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

#include "bae/attack.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "bae/errors.h"

namespace bae {
namespace {

// Shared tail of the tie-break chain.
bool PreferOnTies(const EvaluatedCandidate& a, const EvaluatedCandidate& b) {
  if (a.candidate.mlm_score != b.candidate.mlm_score) {
    return a.candidate.mlm_score > b.candidate.mlm_score;
  }
  if (a.candidate.word != b.candidate.word) return a.candidate.word < b.candidate.word;
  return a.candidate.op.kind < b.candidate.op.kind;
}

std::vector<OpKind> KindsForPhase(AttackMode mode, bool insert_phase) {
  switch (mode) {
    case AttackMode::kReplace:
      return {OpKind::kReplace};
    case AttackMode::kInsert:
      return {OpKind::kInsertLeft, OpKind::kInsertRight};
    case AttackMode::kReplaceOrInsert:
      return {OpKind::kReplace, OpKind::kInsertLeft, OpKind::kInsertRight};
    case AttackMode::kReplaceThenInsert:
      if (insert_phase) return {OpKind::kInsertLeft, OpKind::kInsertRight};
      return {OpKind::kReplace};
  }
  return {};
}

// Mutable state of one greedy walk.
class Walk {
 public:
  Walk(const Backends& backends, const CountingClassifier& classifier,
       const Sentence& original, Label label, const AttackConfig& config,
       const ImportanceScores& importance, AttackTrace* trace)
      : backends_(backends),
        classifier_(classifier),
        original_(original),
        label_(label),
        config_(config),
        trace_(trace),
        current_(original),
        current_probs_(importance.base),
        max_ops_(config.MaxOps(original.size())),
        probe_queries_(importance.queries) {}

  AttackResult Run(const ImportanceScores& importance) {
    for (std::size_t position : importance.order) {
      if (Step(position, /*insert_phase=*/false)) break;
      if (config_.mode == AttackMode::kReplaceThenInsert &&
          Step(position, /*insert_phase=*/true)) {
        break;
      }
    }
    return Finish();
  }

 private:
  // Runs one greedy decision. Returns true when the attack must stop.
  bool Step(std::size_t position, bool insert_phase) {
    if (max_ops_ && ops_.size() >= *max_ops_) {
      return Stop(StopReason::kPerturbationBudget, nullptr);
    }
    StepOutcome step;
    step.position = position;
    step.before = current_;

    const FilterBackends filters{*backends_.pos, *backends_.antonyms, *backends_.encoder};
    for (OpKind kind : KindsForPhase(config_.mode, insert_phase)) {
      const auto raw = GenerateCandidates(*backends_.mlm, current_, position, kind, config_.k);
      CandidateSet set = FilterCandidates(raw, original_, current_, position, kind, config_, filters);
      step.provenance += set.provenance;
      for (auto& c : set.candidates) {
        step.evaluated.push_back({std::move(c), ProbDist(), false});
      }
    }
    provenance_ += step.provenance;

    bool budget_hit = false;
    for (auto& e : step.evaluated) {
      // The budget covers the importance probe as well.
      if (config_.query_budget &&
          probe_queries_ + classifier_.queries() >= *config_.query_budget) {
        budget_hit = true;
        break;
      }
      e.probs = classifier_.Predict(e.candidate.sentence.Text());
      e.flips = e.probs.Argmax() != label_;
    }
    if (budget_hit) {
      // Partially scored steps never apply an op.
      step.evaluated.erase(
          std::remove_if(step.evaluated.begin(), step.evaluated.end(),
                         [](const EvaluatedCandidate& e) { return e.probs.size() == 0; }),
          step.evaluated.end());
      return Stop(StopReason::kQueryBudget, &step);
    }
    if (step.evaluated.empty()) {
      Record(std::move(step));
      return false;
    }

    std::size_t best = 0;
    bool any_flip = false;
    for (std::size_t i = 0; i < step.evaluated.size(); ++i) {
      const auto& e = step.evaluated[i];
      if (e.flips && (!any_flip || PreferFlipping(e, step.evaluated[best]))) {
        best = i;
        any_flip = true;
      }
    }
    if (!any_flip) {
      for (std::size_t i = 1; i < step.evaluated.size(); ++i) {
        if (PreferReducing(step.evaluated[i], step.evaluated[best], label_)) best = i;
      }
    }
    const auto& chosen = step.evaluated[best];
    if (!any_flip && chosen.probs.Prob(label_) > current_probs_.Prob(label_)) {
      ++negative_reduction_steps_;
    }
    current_ = chosen.candidate.sentence;
    current_probs_ = chosen.probs;
    ops_.push_back(chosen.candidate.op);
    step.chosen = best;
    if (any_flip) {
      flipped_ = true;
      return Stop(StopReason::kFlipped, &step);
    }
    Record(std::move(step));
    return false;
  }

  bool Stop(StopReason reason, StepOutcome* step) {
    stop_reason_ = reason;
    if (step) {
      step->stop_reason = reason;
      Record(std::move(*step));
    }
    return true;
  }

  void Record(StepOutcome step) {
    if (trace_) trace_->steps.push_back(std::move(step));
  }

  AttackResult Finish() {
    AttackResult r;
    r.status = flipped_ ? AttackStatus::kSuccess : AttackStatus::kFailure;
    r.stop_reason = stop_reason_;
    r.original = original_;
    r.adversarial = current_;
    r.label = label_;
    r.predicted = current_probs_.Argmax();
    r.ops_applied = ops_;
    r.similarity = backends_.encoder->Similarity(original_.Text(), current_.Text());
    r.final_probs = current_probs_;
    r.provenance = provenance_;
    r.negative_reduction_steps = negative_reduction_steps_;
    return r;
  }

  const Backends& backends_;
  const CountingClassifier& classifier_;
  const Sentence& original_;
  Label label_;
  const AttackConfig& config_;
  AttackTrace* trace_;

  Sentence current_;
  ProbDist current_probs_;
  std::optional<std::size_t> max_ops_;
  std::uint64_t probe_queries_;
  std::vector<PerturbationOp> ops_;
  FilterProvenance provenance_;
  std::uint64_t negative_reduction_steps_ = 0;
  bool flipped_ = false;
  StopReason stop_reason_ = StopReason::kExhausted;
};

AttackResult SkippedResult(const Sentence& sentence, Label label,
                           const ImportanceScores& importance) {
  AttackResult r;
  r.status = AttackStatus::kSkippedAlreadyMisclassified;
  r.stop_reason = StopReason::kAlreadyMisclassified;
  r.original = sentence;
  r.adversarial = sentence;
  r.label = label;
  r.predicted = importance.base.Argmax();
  r.similarity = 1.0;
  r.queries = importance.queries;
  r.final_probs = importance.base;
  return r;
}

AttackResult ErrorResult(const Example& example, const std::string& what) {
  AttackResult r;
  r.example_id = example.id;
  r.status = AttackStatus::kFailure;
  r.stop_reason = StopReason::kError;
  r.label = example.label;
  r.predicted = example.label;
  try {
    r.original = Tokenize(example.text);
    r.adversarial = r.original;
  } catch (const Error&) {
  }
  r.error = what;
  return r;
}

// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

void CheckBackends(const Backends& backends, const AttackConfig& config) {
  backends.Validate();
  config.Validate();
}

}  // namespace

bool PreferFlipping(const EvaluatedCandidate& a, const EvaluatedCandidate& b) {
  if (a.candidate.similarity != b.candidate.similarity) {
    return a.candidate.similarity > b.candidate.similarity;
  }
  return PreferOnTies(a, b);
}

bool PreferReducing(const EvaluatedCandidate& a, const EvaluatedCandidate& b,
                    Label label) {
  const double pa = a.probs.Prob(label);
  const double pb = b.probs.Prob(label);
  if (pa != pb) return pa < pb;
  return PreferOnTies(a, b);
}

ImportanceScores ProbeImportance(const ClassifierBackend& classifier,
                                 const Sentence& sentence, Label label) {
  if (sentence.empty()) throw EmptyTextError();
  ProbDist base = classifier.Predict(sentence.Text());
  if (base.size() != static_cast<std::size_t>(classifier.num_classes())) {
    throw BackendError("classifier returned the wrong number of classes");
  }
  if (base.Argmax() != label) {
    ImportanceScores skipped;
    skipped.base = std::move(base);
    skipped.queries = 1;
    return skipped;
  }
  return TokenImportanceFrom(classifier, sentence, label, base);
}

AttackResult AttackWithImportance(const Backends& backends,
                                  const Sentence& sentence, Label label,
                                  const AttackConfig& config,
                                  const ImportanceScores& importance,
                                  AttackTrace* trace) {
  CheckBackends(backends, config);
  if (trace) {
    trace->importance = importance;
    trace->steps.clear();
  }
  if (importance.base.Argmax() != label) {
    return SkippedResult(sentence, label, importance);
  }
  if (importance.order.size() != sentence.size()) {
    throw Error("importance does not match the sentence");
  }
  CountingClassifier counter(*backends.classifier);
  Walk walk(backends, counter, sentence, label, config, importance, trace);
  AttackResult r = walk.Run(importance);
  r.queries = importance.queries + counter.queries();
  return r;
}

AttackResult Attack(const Backends& backends, const Sentence& sentence,
                    Label label, const AttackConfig& config,
                    AttackTrace* trace) {
  CheckBackends(backends, config);
  const ImportanceScores importance =
      ProbeImportance(*backends.classifier, sentence, label);
  return AttackWithImportance(backends, sentence, label, config, importance, trace);
}

std::vector<AttackResult> AttackCorpus(const Backends& backends,
                                       const Dataset& dataset,
                                       const AttackConfig& config, int jobs) {
  CheckBackends(backends, config);
  std::vector<AttackResult> results(dataset.examples.size());
  if (!backends.concurrency_safe()) jobs = 1;
  ParallelFor(results.size(), jobs, [&](std::size_t i) {
    const Example& ex = dataset.examples[i];
    try {
      results[i] = Attack(backends, Tokenize(ex.text), ex.label, config);
      results[i].example_id = ex.id;
    } catch (const std::exception& e) {
      results[i] = ErrorResult(ex, e.what());
    }
  });
  return results;
}

std::vector<std::vector<AttackResult>> CappedSweep(const Backends& backends,
                                                   const Dataset& dataset,
                                                   const AttackConfig& config,
                                                   std::span<const double> caps,
                                                   int jobs) {
  CheckBackends(backends, config);
  if (!std::is_sorted(caps.begin(), caps.end())) {
    throw ConfigError("caps", "must be sorted ascending");
  }
  for (double c : caps) {
    if (!(c >= 0.0)) throw ConfigError("caps", "must be non-negative");
  }
  const std::size_t n = dataset.examples.size();
  std::vector<std::vector<AttackResult>> out(caps.size(), std::vector<AttackResult>(n));
  if (!backends.concurrency_safe()) jobs = 1;
  ParallelFor(n, jobs, [&](std::size_t i) {
    const Example& ex = dataset.examples[i];
    try {
      const Sentence s = Tokenize(ex.text);
      const ImportanceScores importance = ProbeImportance(*backends.classifier, s, ex.label);
      for (std::size_t c = 0; c < caps.size(); ++c) {
        AttackConfig capped = config;
        capped.max_perturb_ratio = caps[c];
        out[c][i] = AttackWithImportance(backends, s, ex.label, capped, importance);
        out[c][i].example_id = ex.id;
      }
    } catch (const std::exception& e) {
      for (auto& per_cap : out) per_cap[i] = ErrorResult(ex, e.what());
    }
  });
  return out;
}

}  // namespace bae

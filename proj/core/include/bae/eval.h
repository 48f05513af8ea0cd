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

// Corpus metrics, perturbation-budget curves, Replace/Insert ablation
// splits and human-evaluation packaging.

#ifndef BAE_EVAL_H_
#define BAE_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bae/core.h"
#include "bae/ingestion.h"

namespace bae {

// "BAE-R", "BAE-I", "BAE-R/I", "BAE-R+I".
std::string AttackDisplayName(AttackMode mode);

struct ExampleRecord {
  std::string id;
  AttackStatus status = AttackStatus::kFailure;
  double similarity = 1.0;
  double perturb_ratio = 0.0;
  std::uint64_t queries = 0;
};

// Originally misclassified examples are skipped, and count against both
// accuracies.
struct EvaluationReport {
  std::string attack_name;
  std::size_t num_examples = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
  // Percentages of the whole test set.
  double original_accuracy = 0.0;
  double after_attack_accuracy = 0.0;
  // Mean over successful attacks; absent without successes.
  std::optional<double> avg_similarity;
  // Mean perturbation percentage over successful attacks.
  std::optional<double> mean_perturb_ratio;
  std::uint64_t total_queries = 0;
  std::vector<ExampleRecord> records;
};

// Throws MismatchedCorporaError when result ids do not follow the dataset.
EvaluationReport Summarize(std::span<const AttackResult> results,
                           const Dataset& dataset, std::string attack_name);

// "BAE-R+I 4.00 (0.848)"; "(-)" when there were no successes.
std::string FormatSummaryRow(const EvaluationReport& report);
// "Original 88.00" followed by one summary row per report.
std::string FormatSummaryTable(std::span<const EvaluationReport> reports);
std::string ReportJson(std::span<const EvaluationReport> reports);
// attack,original_accuracy,after_attack_accuracy,avg_similarity,...
std::string ReportCsv(std::span<const EvaluationReport> reports);

struct AblationSplits {
  std::size_t num_examples = 0;
  // Percent of the test set: succ(R/I) \ succ(R), succ(R/I) \ succ(I) and
  // succ(R/I) \ (succ(R) U succ(I)).
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::set<std::string> a_ids;
  std::set<std::string> b_ids;
  std::set<std::string> c_ids;
};

// Throws MismatchedCorporaError if the three runs cover different ids.
AblationSplits ComputeAblationSplits(std::span<const AttackResult> replace,
                                     std::span<const AttackResult> insert,
                                     std::span<const AttackResult> replace_or_insert);

// Dataset | A | B | C, one decimal.
std::string FormatAblationTable(
    std::span<const std::pair<std::string, AblationSplits>> rows);

struct CurvePoint {
  double cap = 0.0;
  double after_attack_accuracy = 0.0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

std::vector<CurvePoint> EffectivenessCurve(
    std::span<const double> caps,
    std::span<const std::vector<AttackResult>> sweep, const Dataset& dataset);
bool IsNonIncreasing(std::span<const CurvePoint> curve);
// "max_perturb_pct,after_attack_accuracy" rows; caps printed as percents.
std::string CurveCsv(std::span<const CurvePoint> curve);
// Plain line chart, one polyline per named series.
std::string CurveSvg(
    std::span<const std::pair<std::string, std::vector<CurvePoint>>> series,
    std::string_view title);

struct HumanEvalItem {
  std::string item_id;
  std::string example_id;
  // "original" or the attack name.
  std::string source;
  std::string text;
  Label true_label;
};

struct HumanEvalPacket {
  std::uint64_t seed = 0;
  std::vector<std::string> sources;
  // Shuffled.
  std::vector<HumanEvalItem> items;
};

struct NamedRun {
  std::string name;
  std::vector<AttackResult> results;
};

// Samples n examples successfully attacked by every run and mixes each
// original with its adversarial versions. Deterministic in `seed`.
HumanEvalPacket ExportHumanEval(const Dataset& dataset,
                                std::span<const NamedRun> runs, std::size_t n,
                                std::uint64_t seed);

// Annotator-facing sheet: instructions and "item_id<TAB>text" lines. Carries
// no source information.
std::string AnnotatorSheet(const HumanEvalPacket& packet);
// "item_id<TAB>example_id<TAB>source<TAB>label<TAB>text" lines.
std::string KeyFile(const HumanEvalPacket& packet);
HumanEvalPacket ParseKeyFile(std::string_view content);

struct Annotation {
  std::string annotator;
  std::string item_id;
  Label label;
  // Likert 1 (sure adversarial) .. 5 (sure original).
  int score = 0;
};

// "annotator<TAB>item_id<TAB>label<TAB>score" lines. Throws ParseError.
std::vector<Annotation> ParseAnnotations(std::string_view content);

struct HumanEvalRow {
  std::string source;
  std::size_t items = 0;
  double sentiment_accuracy = 0.0;
  double mean_naturalness = 0.0;
};

// Scores are averaged over annotators per item, then over items. Throws
// IncompleteAnnotationsError if any annotator skipped an item.
std::vector<HumanEvalRow> AggregateHumanScores(
    const HumanEvalPacket& packet, std::span<const Annotation> annotations);
std::string FormatHumanEvalTable(std::span<const HumanEvalRow> rows);

}  // namespace bae

#endif  // BAE_EVAL_H_

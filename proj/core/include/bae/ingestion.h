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

// Classification datasets and persisted attack results.
//
// Dataset files are UTF-8 with one example per line, either "label<TAB>text"
// or a two-column CSV (label,text) with an optional "label,text" header.
// Example ids are 1-based line numbers.
//
// Result files are canonical JSON (sorted keys, two-space indent) tagged
// with schema "bae.results/1" and a fingerprint of the run configuration.

#ifndef BAE_INGESTION_H_
#define BAE_INGESTION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bae/attack_config.h"
#include "bae/core.h"

namespace bae {

enum class DatasetFormat { kTsv, kCsv };
enum class Split { kTrain, kTest };

std::string_view SplitName(Split split);
std::optional<Split> ParseSplit(std::string_view name);
std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name);
// ".csv" -> kCsv, everything else kTsv.
DatasetFormat FormatForPath(const std::filesystem::path& path);

struct Example {
  std::string id;
  std::string text;
  Label label;
};

struct Dataset {
  std::string name;
  std::vector<Example> examples;
  int num_classes = 2;
  bool sentiment_task = false;
  Split split = Split::kTest;

  // Unique ids, labels in range, non-empty tokenizable texts. Throws Error.
  void Validate() const;
  // Mean token count under Tokenize().
  double AverageLength() const;
};

struct LoadOptions {
  // Matched case-insensitively against the known dataset table to default
  // num_classes and sentiment_task.
  std::string name;
  std::optional<int> num_classes;
  std::optional<bool> sentiment_task;
  Split split = Split::kTest;
};

// Throws ParseError (with line number) or LabelRangeError.
Dataset LoadDataset(const std::filesystem::path& path, DatasetFormat format,
                    const LoadOptions& options);
Dataset ParseDataset(std::string_view content, DatasetFormat format,
                     const LoadOptions& options);

struct DatasetStats {
  std::string_view name;
  int num_classes;
  std::size_t train;
  std::size_t test;
  double avg_length;
  bool sentiment_task;
};

// Amazon, Yelp, IMDB, MR, MPQA, Subj, TREC.
std::span<const DatasetStats> KnownDatasets();
std::optional<DatasetStats> FindKnownDataset(std::string_view name);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  double avg_length = 0.0;
  bool ok() const { return errors.empty(); }
};

// Compares a loaded dataset with its declared statistics. Class count or
// split size mismatches are errors; average length more than 10% away from
// the declared value is a warning.
ValidationReport ValidateAgainstKnownStats(const Dataset& dataset);

struct RunFingerprint {
  AttackMode mode = AttackMode::kReplace;
  std::size_t k = AttackConfig::kDefaultK;
  double sim_threshold = AttackConfig::kDefaultSimThreshold;
  std::optional<double> max_perturb_ratio;
  std::optional<std::uint64_t> query_budget;
  bool sentiment_task = false;
  std::uint64_t seed = 0;
  std::string stop_words_version;
  std::string dataset_name;

  static RunFingerprint FromConfig(const AttackConfig& config,
                                   std::string dataset_name,
                                   std::uint64_t seed);
  // Stable 64-bit FNV-1a digest of the canonical fields, as 16 hex digits.
  std::string Digest() const;
  friend bool operator==(const RunFingerprint&, const RunFingerprint&) = default;
};

struct ResultsFile {
  RunFingerprint fingerprint;
  std::vector<AttackResult> results;
};

inline constexpr std::string_view kResultsSchema = "bae.results/1";

std::string SerializeResults(const ResultsFile& file);
// Throws SchemaVersionError or Error.
ResultsFile ParseResults(std::string_view content);
void PersistResults(const ResultsFile& file, const std::filesystem::path& path);
ResultsFile LoadResults(const std::filesystem::path& path);

}  // namespace bae

#endif  // BAE_INGESTION_H_

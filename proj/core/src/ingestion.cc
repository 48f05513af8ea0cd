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

#include "bae/ingestion.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include <boost/tokenizer.hpp>
#include <nlohmann/json.hpp>

#include "bae/errors.h"
#include "io_util.h"

namespace bae {
namespace {

using json = nlohmann::json;

constexpr DatasetStats kKnownDatasets[] = {
    {"Amazon", 2, 900, 100, 10.29, true},
    {"Yelp", 2, 900, 100, 11.66, true},
    {"IMDB", 2, 900, 100, 17.56, true},
    {"MR", 2, 9595, 1067, 20.04, true},
    {"MPQA", 2, 9543, 1060, 3.24, true},
    {"Subj", 2, 9000, 1000, 23.46, false},
    {"TREC", 6, 5951, 500, 7.57, false},
};

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

json SentenceToJson(const Sentence& s) {
  json origin = json::array();
  for (const auto& o : s.origin()) {
    origin.push_back(o ? json(*o) : json(nullptr));
  }
  return {{"tokens", s.tokens()}, {"raw_text", s.raw_text()}, {"origin", origin}};
}

Sentence SentenceFromJson(const json& j) {
  std::vector<std::optional<std::size_t>> origin;
  for (const auto& o : j.at("origin")) {
    origin.push_back(o.is_null() ? std::nullopt
                                 : std::optional<std::size_t>(o.get<std::size_t>()));
  }
  return Sentence::FromParts(j.at("tokens").get<std::vector<std::string>>(),
                             j.at("raw_text").get<std::string>(),
                             std::move(origin));
}

json OpToJson(const PerturbationOp& op) {
  json j = {{"kind", OpKindName(op.kind)},
            {"position", op.position},
            {"new_token", op.new_token}};
  if (op.original_token) j["original_token"] = *op.original_token;
  return j;
}

PerturbationOp OpFromJson(const json& j) {
  PerturbationOp op;
  auto kind = ParseOpKind(j.at("kind").get<std::string>());
  if (!kind) throw Error("unknown op kind");
  op.kind = *kind;
  op.position = j.at("position").get<std::size_t>();
  op.new_token = j.at("new_token").get<std::string>();
  if (j.contains("original_token")) {
    op.original_token = j.at("original_token").get<std::string>();
  }
  return op;
}

json ProvenanceToJson(const FilterProvenance& p) {
  return {{"degenerate", p.degenerate},
          {"stop_word", p.stop_word},
          {"part_of_speech", p.part_of_speech},
          {"antonym", p.antonym},
          {"similarity", p.similarity}};
}

FilterProvenance ProvenanceFromJson(const json& j) {
  FilterProvenance p;
  p.degenerate = j.at("degenerate").get<std::uint64_t>();
  p.stop_word = j.at("stop_word").get<std::uint64_t>();
  p.part_of_speech = j.at("part_of_speech").get<std::uint64_t>();
  p.antonym = j.at("antonym").get<std::uint64_t>();
  p.similarity = j.at("similarity").get<std::uint64_t>();
  return p;
}

json ResultToJson(const AttackResult& r) {
  json ops = json::array();
  for (const auto& op : r.ops_applied) ops.push_back(OpToJson(op));
  json j = {{"id", r.example_id},
            {"status", AttackStatusName(r.status)},
            {"stop_reason", StopReasonName(r.stop_reason)},
            {"original", SentenceToJson(r.original)},
            {"adversarial", SentenceToJson(r.adversarial)},
            {"label", r.label.class_index},
            {"predicted", r.predicted.class_index},
            {"ops", ops},
            {"similarity", r.similarity},
            {"queries", r.queries},
            {"final_probs", r.final_probs.probs()},
            {"provenance", ProvenanceToJson(r.provenance)},
            {"negative_reduction_steps", r.negative_reduction_steps}};
  if (r.error) j["error"] = *r.error;
  return j;
}

AttackResult ResultFromJson(const json& j) {
  AttackResult r;
  r.example_id = j.at("id").get<std::string>();
  auto status = ParseAttackStatus(j.at("status").get<std::string>());
  auto reason = ParseStopReason(j.at("stop_reason").get<std::string>());
  if (!status || !reason) throw Error("unknown status or stop reason");
  r.status = *status;
  r.stop_reason = *reason;
  r.original = SentenceFromJson(j.at("original"));
  r.adversarial = SentenceFromJson(j.at("adversarial"));
  r.label = Label{j.at("label").get<int>()};
  r.predicted = Label{j.at("predicted").get<int>()};
  for (const auto& op : j.at("ops")) r.ops_applied.push_back(OpFromJson(op));
  r.similarity = j.at("similarity").get<double>();
  r.queries = j.at("queries").get<std::uint64_t>();
  auto probs = j.at("final_probs").get<std::vector<double>>();
  if (!probs.empty()) r.final_probs = ProbDist::FromProbs(std::move(probs));
  r.provenance = ProvenanceFromJson(j.at("provenance"));
  r.negative_reduction_steps = j.at("negative_reduction_steps").get<std::uint64_t>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

json FingerprintToJson(const RunFingerprint& f) {
  return {{"mode", AttackModeName(f.mode)},
          {"k", f.k},
          {"sim_threshold", f.sim_threshold},
          {"max_perturb_ratio",
           f.max_perturb_ratio ? json(*f.max_perturb_ratio) : json(nullptr)},
          {"query_budget", f.query_budget ? json(*f.query_budget) : json(nullptr)},
          {"sentiment_task", f.sentiment_task},
          {"seed", f.seed},
          {"stop_words", f.stop_words_version},
          {"dataset", f.dataset_name},
          {"digest", f.Digest()}};
}

RunFingerprint FingerprintFromJson(const json& j) {
  RunFingerprint f;
  auto mode = ParseAttackMode(j.at("mode").get<std::string>());
  if (!mode) throw Error("unknown attack mode");
  f.mode = *mode;
  f.k = j.at("k").get<std::size_t>();
  f.sim_threshold = j.at("sim_threshold").get<double>();
  if (!j.at("max_perturb_ratio").is_null()) {
    f.max_perturb_ratio = j.at("max_perturb_ratio").get<double>();
  }
  if (!j.at("query_budget").is_null()) {
    f.query_budget = j.at("query_budget").get<std::uint64_t>();
  }
  f.sentiment_task = j.at("sentiment_task").get<bool>();
  f.seed = j.at("seed").get<std::uint64_t>();
  f.stop_words_version = j.at("stop_words").get<std::string>();
  f.dataset_name = j.at("dataset").get<std::string>();
  if (j.at("digest").get<std::string>() != f.Digest()) {
    throw Error("fingerprint digest mismatch");
  }
  return f;
}

}  // namespace

std::string_view SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name) {
  if (name == "tsv") return DatasetFormat::kTsv;
  if (name == "csv") return DatasetFormat::kCsv;
  return std::nullopt;
}

DatasetFormat FormatForPath(const std::filesystem::path& path) {
  return internal::AsciiLower(path.extension().string()) == ".csv"
             ? DatasetFormat::kCsv
             : DatasetFormat::kTsv;
}

void Dataset::Validate() const {
  if (num_classes < 2) throw Error("num_classes must be >= 2");
  std::set<std::string, std::less<>> ids;
  for (const auto& ex : examples) {
    if (!ids.insert(ex.id).second) throw Error("duplicate example id " + ex.id);
    if (ex.label.class_index < 0 || ex.label.class_index >= num_classes) {
      throw Error("example " + ex.id + " label out of range");
    }
    try {
      Tokenize(ex.text);
    } catch (const EmptyTextError&) {
      throw Error("example " + ex.id + " has empty text");
    }
  }
}

double Dataset::AverageLength() const {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : examples) total += static_cast<double>(Tokenize(ex.text).size());
  return total / static_cast<double>(examples.size());
}

Dataset ParseDataset(std::string_view content, DatasetFormat format,
                     const LoadOptions& options) {
  Dataset ds;
  ds.name = options.name;
  ds.split = options.split;
  const auto known = FindKnownDataset(options.name);
  ds.sentiment_task = options.sentiment_task.value_or(known && known->sentiment_task);

  struct Row {
    std::size_t line;
    int label;
    std::string text;
  };
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line(content.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (internal::Trim(line).empty()) {
      if (nl == content.size()) break;
      continue;
    }
    std::string label_field;
    std::string text;
    if (format == DatasetFormat::kTsv) {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw ParseError(line_no, "expected label<TAB>text");
      label_field = line.substr(0, tab);
      text = line.substr(tab + 1);
    } else {
      using Sep = boost::escaped_list_separator<char>;
      std::vector<std::string> fields;
      try {
        boost::tokenizer<Sep> tok(line, Sep('\\', ',', '"'));
        fields.assign(tok.begin(), tok.end());
      } catch (const boost::escaped_list_error& e) {
        throw ParseError(line_no, e.what());
      }
      if (fields.size() != 2) throw ParseError(line_no, "expected two CSV columns");
      if (line_no == 1 && internal::Trim(fields[0]) == "label") continue;
      label_field = fields[0];
      text = fields[1];
    }
    const auto label = ParseInt(internal::Trim(label_field));
    if (!label) throw ParseError(line_no, "label is not an integer");
    if (internal::Trim(text).empty()) throw ParseError(line_no, "empty text");
    try {
      Tokenize(text);
    } catch (const EmptyTextError&) {
      throw ParseError(line_no, "text has no tokens");
    }
    rows.push_back({line_no, *label, std::move(text)});
  }

  int max_label = 1;
  for (const auto& r : rows) max_label = std::max(max_label, r.label);
  ds.num_classes = options.num_classes.value_or(known ? known->num_classes : max_label + 1);
  for (auto& r : rows) {
    if (r.label < 0 || r.label >= ds.num_classes) {
      throw LabelRangeError(r.line, r.label, ds.num_classes);
    }
    ds.examples.push_back({std::to_string(r.line), std::move(r.text), Label{r.label}});
  }
  ds.Validate();
  return ds;
}

Dataset LoadDataset(const std::filesystem::path& path, DatasetFormat format,
                    const LoadOptions& options) {
  LoadOptions opts = options;
  if (opts.name.empty()) opts.name = path.stem().string();
  return ParseDataset(internal::ReadFile(path), format, opts);
}

std::span<const DatasetStats> KnownDatasets() { return kKnownDatasets; }

std::optional<DatasetStats> FindKnownDataset(std::string_view name) {
  const std::string lowered = internal::AsciiLower(name);
  for (const auto& d : kKnownDatasets) {
    if (internal::AsciiLower(d.name) == lowered) return d;
  }
  return std::nullopt;
}

ValidationReport ValidateAgainstKnownStats(const Dataset& dataset) {
  ValidationReport report;
  report.avg_length = dataset.AverageLength();
  const auto known = FindKnownDataset(dataset.name);
  if (!known) {
    report.warnings.push_back("no declared statistics for dataset '" + dataset.name + "'");
    return report;
  }
  if (dataset.num_classes != known->num_classes) {
    report.errors.push_back("expected " + std::to_string(known->num_classes) +
                            " classes, found " + std::to_string(dataset.num_classes));
  }
  const std::size_t expected =
      dataset.split == Split::kTrain ? known->train : known->test;
  if (dataset.examples.size() != expected) {
    report.errors.push_back("expected " + std::to_string(expected) + " " +
                            std::string(SplitName(dataset.split)) +
                            " examples, found " +
                            std::to_string(dataset.examples.size()));
  }
  const double deviation = std::abs(report.avg_length - known->avg_length) / known->avg_length;
  if (deviation > 0.10) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "average length %.2f deviates %.1f%% from declared %.2f",
                  report.avg_length, deviation * 100.0, known->avg_length);
    report.warnings.emplace_back(buf);
  }
  return report;
}

RunFingerprint RunFingerprint::FromConfig(const AttackConfig& config,
                                          std::string dataset_name,
                                          std::uint64_t seed) {
  RunFingerprint f;
  f.mode = config.mode;
  f.k = config.k;
  f.sim_threshold = config.sim_threshold;
  f.max_perturb_ratio = config.max_perturb_ratio;
  f.query_budget = config.query_budget;
  f.sentiment_task = config.sentiment_task;
  f.seed = seed;
  f.stop_words_version = config.stop_words ? config.stop_words->version() : "";
  f.dataset_name = std::move(dataset_name);
  return f;
}

std::string RunFingerprint::Digest() const {
  json canonical = {
      {"mode", AttackModeName(mode)},
      {"k", k},
      {"sim_threshold", sim_threshold},
      {"max_perturb_ratio", max_perturb_ratio ? json(*max_perturb_ratio) : json(nullptr)},
      {"query_budget", query_budget ? json(*query_budget) : json(nullptr)},
      {"sentiment_task", sentiment_task},
      {"seed", seed},
      {"stop_words", stop_words_version},
      {"dataset", dataset_name}};
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string SerializeResults(const ResultsFile& file) {
  json results = json::array();
  for (const auto& r : file.results) results.push_back(ResultToJson(r));
  json doc = {{"schema", kResultsSchema},
              {"fingerprint", FingerprintToJson(file.fingerprint)},
              {"results", results}};
  return doc.dump(2) + "\n";
}

ResultsFile ParseResults(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed results file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema")) {
    throw SchemaVersionError("results file has no schema tag");
  }
  const std::string schema = doc.at("schema").get<std::string>();
  if (schema != kResultsSchema) {
    throw SchemaVersionError("unsupported results schema '" + schema +
                             "', expected " + std::string(kResultsSchema));
  }
  ResultsFile file;
  try {
    file.fingerprint = FingerprintFromJson(doc.at("fingerprint"));
    for (const auto& r : doc.at("results")) file.results.push_back(ResultFromJson(r));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed results file: ") + e.what());
  }
  return file;
}

void PersistResults(const ResultsFile& file, const std::filesystem::path& path) {
  internal::WriteFile(path, SerializeResults(file));
}

ResultsFile LoadResults(const std::filesystem::path& path) {
  return ParseResults(internal::ReadFile(path));
}

}  // namespace bae

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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bae/adapters.h"
#include "bae/attack.h"
#include "bae/errors.h"
#include "bae/eval.h"
#include "bae/ingestion.h"

namespace bae::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Raised for problems the user can fix by changing the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

// Flags shared by the commands that attack a corpus. Unset flags fall back to
// BAE_* environment variables, then to the [attack] section of the config.
struct RunFlags {
  std::vector<std::string> modes;
  std::optional<long long> k;
  std::optional<double> sim_threshold;
  std::optional<double> max_perturb;
  std::optional<long long> query_budget;
  std::string backends;
  std::string dataset;
  std::string name;
  std::string out;
  std::optional<int> jobs;
  std::optional<long long> seed;
  bool force = false;

  void Register(CLI::App& app, bool multi_mode) {
    auto* mode = app.add_option("--mode", modes, "Attack mode: R, I, R/I or R+I");
    if (!multi_mode) mode->expected(1);
    app.add_option("--k", k, "Masked-LM predictions per mask");
    app.add_option("--sim-threshold", sim_threshold, "Minimum similarity to the input");
    app.add_option("--max-perturb", max_perturb,
                   "Maximum fraction of original tokens perturbed");
    app.add_option("--query-budget", query_budget, "Classifier calls allowed per sentence");
    app.add_option("--backends", backends, "Adapter config (INI)");
    app.add_option("--dataset", dataset, "Dataset file (TSV or CSV)");
    app.add_option("--name", name, "Dataset name (defaults to the file stem)");
    app.add_option("--out", out, "Output directory");
    app.add_option("--jobs", jobs, "Sentences attacked in parallel");
    app.add_option("--seed", seed, "Seed recorded in the run fingerprint");
    app.add_flag("--force", force, "Overwrite existing outputs");
  }

  void ApplyEnv(const EnvLookup& env) {
    auto str = [&](std::string& slot, std::string_view var) {
      if (slot.empty()) {
        if (auto v = env(var)) slot = *v;
      }
    };
    auto num = [&]<typename T>(std::optional<T>& slot, std::string_view var) {
      if (!slot) {
        if (auto v = env(var)) slot = ParseNumber<T>(*v, var);
      }
    };
    if (modes.empty()) {
      if (auto v = env("BAE_MODE")) {
        std::stringstream in(*v);
        for (std::string m; std::getline(in, m, ',');) modes.push_back(m);
      }
    }
    num(k, "BAE_K");
    num(sim_threshold, "BAE_SIM_THRESHOLD");
    num(max_perturb, "BAE_MAX_PERTURB");
    num(query_budget, "BAE_QUERY_BUDGET");
    num(jobs, "BAE_JOBS");
    num(seed, "BAE_SEED");
    str(backends, "BAE_BACKENDS");
    str(dataset, "BAE_DATASET");
    str(out, "BAE_OUT");
  }

  void RequirePaths() const {
    if (dataset.empty()) throw UsageError("--dataset is required");
    if (backends.empty()) throw UsageError("--backends is required");
    if (out.empty()) throw UsageError("--out is required");
    if (jobs && *jobs < 1) throw UsageError("--jobs must be >= 1");
    if (seed && *seed < 0) throw UsageError("--seed must be >= 0");
  }

  std::vector<AttackMode> ParsedModes() const {
    std::vector<AttackMode> out_modes;
    for (const auto& m : modes) {
      auto parsed = ParseAttackMode(m);
      if (!parsed) throw UsageError("--mode must be R, I, R/I or R+I, got '" + m + "'");
      out_modes.push_back(*parsed);
    }
    return out_modes;
  }
};

// Everything a corpus run needs after flags, env and config are merged.
struct Prepared {
  AdapterConfig adapters;
  Dataset dataset;
  std::uint64_t seed = 0;
  int jobs = 1;
};

Prepared Prepare(const RunFlags& flags) {
  Prepared p;
  p.adapters = LoadAdapterConfig(flags.backends);
  AttackConfig& c = p.adapters.attack;
  if (flags.k) {
    if (*flags.k < 1) throw UsageError("--k must be >= 1");
    c.k = static_cast<std::size_t>(*flags.k);
  }
  if (flags.sim_threshold) c.sim_threshold = *flags.sim_threshold;
  if (flags.max_perturb) c.max_perturb_ratio = *flags.max_perturb;
  if (flags.query_budget) {
    if (*flags.query_budget < 1) throw UsageError("--query-budget must be >= 1");
    c.query_budget = static_cast<std::uint64_t>(*flags.query_budget);
  }
  try {
    c.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  LoadOptions lo;
  lo.name = flags.name;
  lo.num_classes = p.adapters.backends.classifier->num_classes();
  p.dataset = LoadDataset(flags.dataset, FormatForPath(flags.dataset), lo);
  if (!p.adapters.sentiment_task_set) c.sentiment_task = p.dataset.sentiment_task;
  p.seed = static_cast<std::uint64_t>(flags.seed.value_or(0));
  p.jobs = flags.jobs.value_or(1);
  return p;
}

std::string Timestamp(const EnvLookup& env) {
  std::time_t t = 0;
  if (auto epoch = env("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(ParseNumber<long long>(*epoch, "SOURCE_DATE_EPOCH"));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path.string());
    f << text;
    if (!f.flush()) throw Error("cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

std::string ReadText(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json FingerprintJson(const RunFingerprint& f) {
  json j{{"mode", AttackModeName(f.mode)},
         {"k", f.k},
         {"sim_threshold", f.sim_threshold},
         {"max_perturb_ratio", nullptr},
         {"query_budget", nullptr},
         {"sentiment_task", f.sentiment_task},
         {"seed", f.seed},
         {"stop_words_version", f.stop_words_version},
         {"dataset", f.dataset_name},
         {"digest", f.Digest()}};
  if (f.max_perturb_ratio) j["max_perturb_ratio"] = *f.max_perturb_ratio;
  if (f.query_budget) j["query_budget"] = *f.query_budget;
  return j;
}

// Run manifest: written before the first classifier query and completed
// with a finish time once outputs are on disk.
class Manifest {
 public:
  Manifest(std::string command, const RunFlags& flags, const EnvLookup& env)
      : env_(env), path_(fs::path(flags.out) / "manifest.json") {
    doc_ = json{{"schema", "bae.manifest/1"},
                {"command", std::move(command)},
                {"config_path", flags.backends},
                {"dataset_path", flags.dataset},
                {"output_dir", flags.out},
                {"seed", flags.seed.value_or(0)},
                {"started_at", Timestamp(env)},
                {"finished_at", nullptr},
                {"runs", json::array()}};
  }

  void AddRun(const RunFingerprint& f) { doc_["runs"].push_back(FingerprintJson(f)); }
  void Write() const { WriteText(path_, doc_.dump(2) + "\n"); }
  void Finish() {
    doc_["finished_at"] = Timestamp(env_);
    Write();
  }

 private:
  EnvLookup env_;
  fs::path path_;
  json doc_;
};

void GuardOverwrite(const std::vector<fs::path>& outputs, bool force) {
  if (force) return;
  for (const auto& p : outputs) {
    if (fs::exists(p)) {
      throw Error(p.string() + " already exists; pass --force to overwrite");
    }
  }
}

std::string ModeSlug(AttackMode mode) {
  switch (mode) {
    case AttackMode::kReplace: return "R";
    case AttackMode::kInsert: return "I";
    case AttackMode::kReplaceOrInsert: return "R_or_I";
    case AttackMode::kReplaceThenInsert: return "R_plus_I";
  }
  return "unknown";
}

int CmdAttack(RunFlags flags, std::ostream& out, const EnvLookup& env) {
  flags.ApplyEnv(env);
  flags.RequirePaths();
  const auto modes = flags.ParsedModes();
  if (modes.size() > 1) throw UsageError("attack takes a single --mode");
  const fs::path dir(flags.out);
  const fs::path results_path = dir / "results.json";
  GuardOverwrite({results_path}, flags.force);

  Prepared p = Prepare(flags);
  AttackConfig& config = p.adapters.attack;
  if (!modes.empty()) config.mode = modes.front();

  const auto fingerprint = RunFingerprint::FromConfig(config, p.dataset.name, p.seed);
  Manifest manifest("attack", flags, env);
  manifest.AddRun(fingerprint);
  manifest.Write();

  ResultsFile file{fingerprint, AttackCorpus(p.adapters.backends, p.dataset, config, p.jobs)};
  PersistResults(file, results_path);

  const EvaluationReport report =
      Summarize(file.results, p.dataset, AttackDisplayName(config.mode));
  const std::vector<EvaluationReport> reports{report};
  const std::string summary = FormatSummaryTable(reports);
  WriteText(dir / "summary.txt", summary);
  WriteText(dir / "report.json", ReportJson(reports));
  WriteText(dir / "report.csv", ReportCsv(reports));
  manifest.Finish();
  out << summary;
  return kExitOk;
}

int CmdCurve(RunFlags flags, const std::string& caps_text, bool assert_monotone,
             bool render, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  flags.ApplyEnv(env);
  flags.RequirePaths();
  std::vector<double> caps;
  try {
    caps = ParseCaps(caps_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--caps: ") + e.what());
  }
  auto modes = flags.ParsedModes();
  if (modes.empty()) {
    modes = {AttackMode::kReplace, AttackMode::kInsert, AttackMode::kReplaceOrInsert,
             AttackMode::kReplaceThenInsert};
  }
  const fs::path dir(flags.out);
  std::vector<fs::path> outputs;
  for (AttackMode m : modes) outputs.push_back(dir / ("curve_" + ModeSlug(m) + ".csv"));
  GuardOverwrite(outputs, flags.force);

  Prepared p = Prepare(flags);
  Manifest manifest("curve", flags, env);
  for (AttackMode m : modes) {
    AttackConfig c = p.adapters.attack;
    c.mode = m;
    manifest.AddRun(RunFingerprint::FromConfig(c, p.dataset.name, p.seed));
  }
  manifest.Write();

  std::vector<std::pair<std::string, std::vector<CurvePoint>>> series;
  bool monotone = true;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    AttackConfig c = p.adapters.attack;
    c.mode = modes[i];
    const auto sweep = CappedSweep(p.adapters.backends, p.dataset, c, caps, p.jobs);
    auto curve = EffectivenessCurve(caps, sweep, p.dataset);
    WriteText(outputs[i], CurveCsv(curve));
    if (!IsNonIncreasing(curve)) {
      monotone = false;
      err << AttackDisplayName(modes[i]) << ": curve is not non-increasing\n";
    }
    out << outputs[i].string() << "\n";
    series.emplace_back(AttackDisplayName(modes[i]), std::move(curve));
  }
  if (render) {
    const fs::path svg = dir / "curve.svg";
    WriteText(svg, CurveSvg(series, "After-attack accuracy vs maximum perturbation: " +
                                        p.dataset.name));
    out << svg.string() << "\n";
  }
  manifest.Finish();
  if (assert_monotone && !monotone) return kExitRuntime;
  return kExitOk;
}

int CmdAblate(const std::string& replace, const std::string& insert,
              const std::string& choice, const std::string& name,
              const std::string& out_path, std::ostream& out) {
  if (replace.empty() || insert.empty() || choice.empty()) {
    throw UsageError("--replace, --insert and --choice are required");
  }
  const ResultsFile r = LoadResults(replace);
  const ResultsFile i = LoadResults(insert);
  const ResultsFile ri = LoadResults(choice);
  const AblationSplits splits = ComputeAblationSplits(r.results, i.results, ri.results);

  std::set<std::string> both;
  std::set_intersection(splits.a_ids.begin(), splits.a_ids.end(), splits.b_ids.begin(),
                        splits.b_ids.end(), std::inserter(both, both.end()));
  if (both != splits.c_ids) throw Error("ablation sets violate C = A intersect B");

  const std::string row_name = name.empty() ? ri.fingerprint.dataset_name : name;
  const std::vector<std::pair<std::string, AblationSplits>> rows{{row_name, splits}};
  const std::string table = FormatAblationTable(rows);
  if (!out_path.empty()) WriteText(out_path, table);
  out << table;
  return kExitOk;
}

int CmdHumanExport(const std::string& dataset_path, const std::string& name,
                   const std::vector<std::string>& runs, std::size_t n,
                   std::optional<long long> seed, std::string out_dir, bool force,
                   std::ostream& out, const EnvLookup& env) {
  if (!seed) {
    if (auto v = env("BAE_SEED")) seed = ParseNumber<long long>(*v, "BAE_SEED");
  }
  if (out_dir.empty()) {
    if (auto v = env("BAE_OUT")) out_dir = *v;
  }
  std::string dataset_file = dataset_path;
  if (dataset_file.empty()) {
    if (auto v = env("BAE_DATASET")) dataset_file = *v;
  }
  if (dataset_file.empty()) throw UsageError("--dataset is required");
  if (out_dir.empty()) throw UsageError("--out is required");
  if (runs.empty()) throw UsageError("at least one --run NAME=RESULTS is required");
  if (seed && *seed < 0) throw UsageError("--seed must be >= 0");

  std::vector<NamedRun> named;
  for (const auto& spec : runs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--run expects NAME=RESULTS, got '" + spec + "'");
    }
    named.push_back({spec.substr(0, eq), LoadResults(spec.substr(eq + 1)).results});
  }
  const fs::path dir(out_dir);
  GuardOverwrite({dir / "annotator_sheet.tsv", dir / "key.tsv"}, force);

  LoadOptions lo;
  lo.name = name;
  const Dataset dataset = LoadDataset(dataset_file, FormatForPath(dataset_file), lo);
  const HumanEvalPacket packet =
      ExportHumanEval(dataset, named, n, static_cast<std::uint64_t>(seed.value_or(0)));
  WriteText(dir / "annotator_sheet.tsv", AnnotatorSheet(packet));
  WriteText(dir / "key.tsv", KeyFile(packet));
  out << packet.items.size() << " items written to " << dir.string() << "\n";
  return kExitOk;
}

int CmdHumanAggregate(const std::string& key, const std::string& annotations,
                      const std::string& out_path, std::ostream& out) {
  if (key.empty() || annotations.empty()) {
    throw UsageError("--key and --annotations are required");
  }
  const HumanEvalPacket packet = ParseKeyFile(ReadText(key));
  const auto anns = ParseAnnotations(ReadText(annotations));
  const auto rows = AggregateHumanScores(packet, anns);
  const std::string table = FormatHumanEvalTable(rows);
  if (!out_path.empty()) WriteText(out_path, table);
  out << table;
  return kExitOk;
}

int CmdValidate(std::string dataset_path, const std::string& name,
                const std::string& split_name, std::optional<int> num_classes,
                std::ostream& out, std::ostream& err, const EnvLookup& env) {
  if (dataset_path.empty()) {
    if (auto v = env("BAE_DATASET")) dataset_path = *v;
  }
  if (dataset_path.empty()) throw UsageError("--dataset is required");
  LoadOptions lo;
  lo.name = name;
  lo.num_classes = num_classes;
  auto split = ParseSplit(split_name);
  if (!split) throw UsageError("--split must be train or test");
  lo.split = *split;
  const Dataset ds = LoadDataset(dataset_path, FormatForPath(dataset_path), lo);
  const ValidationReport report = ValidateAgainstKnownStats(ds);

  char avg[32];
  std::snprintf(avg, sizeof(avg), "%.2f", report.avg_length);
  out << "dataset " << ds.name << "\n"
      << "split " << SplitName(ds.split) << "\n"
      << "classes " << ds.num_classes << "\n"
      << "examples " << ds.examples.size() << "\n"
      << "avg_length " << avg << "\n"
      << "sentiment_task " << (ds.sentiment_task ? "true" : "false") << "\n";
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  for (const auto& e : report.errors) err << "error: " << e << "\n";
  out << (report.ok() ? "ok" : "invalid") << "\n";
  return report.ok() ? kExitOk : kExitRuntime;
}

}  // namespace

EnvLookup ProcessEnv() {
  return [](std::string_view name) -> std::optional<std::string> {
    const char* v = std::getenv(std::string(name).c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
}

std::vector<double> ParseCaps(std::string_view text) {
  std::vector<std::string> parts;
  std::stringstream in{std::string(text)};
  for (std::string part; std::getline(in, part, ',');) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    parts.push_back(part);
  }
  if (parts.empty()) throw std::invalid_argument("no caps given");

  auto number = [](const std::string& s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v) || v < 0) {
      throw std::invalid_argument("bad cap '" + s + "'");
    }
    return v;
  };

  std::vector<double> percents;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] != "...") {
      percents.push_back(number(parts[i]));
      continue;
    }
    // "a,b,...,z" expands with step b - a.
    if (percents.size() < 2 || i + 1 != parts.size() - 1) {
      throw std::invalid_argument("'...' needs two leading values and one final value");
    }
    const double step = percents[percents.size() - 1] - percents[percents.size() - 2];
    const double last = number(parts[i + 1]);
    if (step <= 0) throw std::invalid_argument("'...' needs an increasing progression");
    const double first = percents.back();
    const double count = std::round((last - first) / step);
    if (count < 1 || std::abs(first + count * step - last) > 1e-9 * std::max(1.0, last)) {
      throw std::invalid_argument("final cap is not on the progression");
    }
    for (int j = 1; j <= static_cast<int>(count); ++j) percents.push_back(first + j * step);
    break;
  }
  for (std::size_t i = 1; i < percents.size(); ++i) {
    if (!(percents[i] > percents[i - 1])) {
      throw std::invalid_argument("caps must be strictly ascending");
    }
  }
  std::vector<double> ratios;
  for (double p : percents) ratios.push_back(p / 100.0);
  return ratios;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"BAE: masked-LM adversarial attacks on text classifiers", "bae"};
  app.require_subcommand(1);

  RunFlags attack_flags;
  auto* attack = app.add_subcommand("attack", "Attack every example of a dataset");
  attack_flags.Register(*attack, false);

  RunFlags curve_flags;
  std::string caps = "10,20,...,100";
  bool assert_monotone = false;
  bool render = false;
  auto* curve = app.add_subcommand("curve", "Accuracy as a function of the perturbation cap");
  curve_flags.Register(*curve, true);
  curve->add_option("--caps", caps, "Percent caps, e.g. 10,20,...,100")->capture_default_str();
  curve->add_flag("--assert-monotone", assert_monotone,
                  "Exit 1 unless every curve is non-increasing");
  curve->add_flag("--render", render, "Also write curve.svg");

  std::string abl_r, abl_i, abl_ri, abl_name, abl_out;
  auto* ablate = app.add_subcommand("ablate", "Replace/Insert ablation from three runs");
  ablate->add_option("--replace", abl_r, "results.json of the R run");
  ablate->add_option("--insert", abl_i, "results.json of the I run");
  ablate->add_option("--choice", abl_ri, "results.json of the R/I run");
  ablate->add_option("--name", abl_name, "Row label (defaults to the dataset name)");
  ablate->add_option("--out", abl_out, "Also write the table here");

  auto* human = app.add_subcommand("human-eval", "Human evaluation packets");
  human->require_subcommand(1);
  std::string he_dataset, he_name, he_out;
  std::vector<std::string> he_runs;
  std::size_t he_n = 100;
  std::optional<long long> he_seed;
  bool he_force = false;
  auto* he_export = human->add_subcommand("export", "Write annotator sheet and key");
  he_export->add_option("--dataset", he_dataset, "Dataset the runs attacked");
  he_export->add_option("--name", he_name, "Dataset name");
  he_export->add_option("--run", he_runs, "NAME=results.json, repeatable");
  he_export->add_option("--n", he_n, "Examples to sample")->capture_default_str();
  he_export->add_option("--seed", he_seed, "Shuffle seed");
  he_export->add_option("--out", he_out, "Output directory");
  he_export->add_flag("--force", he_force, "Overwrite existing outputs");
  std::string he_key, he_annotations, he_table;
  auto* he_aggregate = human->add_subcommand("aggregate", "Score collected annotations");
  he_aggregate->add_option("--key", he_key, "key.tsv from export");
  he_aggregate->add_option("--annotations", he_annotations,
                           "annotator<TAB>item<TAB>label<TAB>score lines");
  he_aggregate->add_option("--out", he_table, "Also write the table here");

  std::string va_dataset, va_name, va_split = "test";
  std::optional<int> va_classes;
  auto* validate = app.add_subcommand("validate", "Check a dataset against its declared stats");
  validate->add_option("--dataset", va_dataset, "Dataset file");
  validate->add_option("--name", va_name, "Dataset name (defaults to the file stem)");
  validate->add_option("--split", va_split, "train or test")->capture_default_str();
  validate->add_option("--num-classes", va_classes, "Override the class count");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bae: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (attack->parsed()) return CmdAttack(attack_flags, out, env);
    if (curve->parsed()) {
      return CmdCurve(curve_flags, caps, assert_monotone, render, out, err, env);
    }
    if (ablate->parsed()) return CmdAblate(abl_r, abl_i, abl_ri, abl_name, abl_out, out);
    if (he_export->parsed()) {
      return CmdHumanExport(he_dataset, he_name, he_runs, he_n, he_seed, he_out, he_force,
                            out, env);
    }
    if (he_aggregate->parsed()) {
      return CmdHumanAggregate(he_key, he_annotations, he_table, out);
    }
    if (validate->parsed()) {
      return CmdValidate(va_dataset, va_name, va_split, va_classes, out, err, env);
    }
  } catch (const UsageError& e) {
    err << "bae: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bae: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << "bae: no command\n";
  return kExitUsage;
}

}  // namespace bae::cli

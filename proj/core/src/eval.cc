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

#include "bae/eval.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bae/errors.h"
#include "io_util.h"

namespace bae {
namespace {

using json = nlohmann::json;

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::set<std::string> SuccessIds(std::span<const AttackResult> results) {
  std::set<std::string> ids;
  for (const auto& r : results) {
    if (r.status == AttackStatus::kSuccess) ids.insert(r.example_id);
  }
  return ids;
}

std::vector<std::string> Ids(std::span<const AttackResult> results) {
  std::vector<std::string> ids;
  ids.reserve(results.size());
  for (const auto& r : results) ids.push_back(r.example_id);
  return ids;
}

std::set<std::string> Minus(const std::set<std::string>& a,
                            const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

// Unbiased draw in [0, bound) from the fully specified mt19937_64 stream, so
// shuffles are identical on every standard library.
std::uint64_t Draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void SeededShuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[Draw(rng, i)]);
  }
}

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

template <typename Fn>
void ForEachLine(std::string_view content, Fn fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line(content.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (internal::Trim(line).empty() || line[0] == '#') continue;
    fn(line_no, line);
  }
}

int ParseIntField(std::size_t line_no, const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError(line_no, "not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line_no, "not an integer: " + s);
  }
}

}  // namespace

std::string AttackDisplayName(AttackMode mode) {
  return "BAE-" + std::string(AttackModeName(mode));
}

EvaluationReport Summarize(std::span<const AttackResult> results,
                           const Dataset& dataset, std::string attack_name) {
  if (results.size() != dataset.examples.size()) {
    throw MismatchedCorporaError("results cover " + std::to_string(results.size()) +
                                 " examples, dataset has " +
                                 std::to_string(dataset.examples.size()));
  }
  EvaluationReport rep;
  rep.attack_name = std::move(attack_name);
  rep.num_examples = results.size();
  double sim_sum = 0.0;
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const AttackResult& r = results[i];
    if (r.example_id != dataset.examples[i].id) {
      throw MismatchedCorporaError("result " + std::to_string(i) + " has id '" +
                                   r.example_id + "', dataset has '" +
                                   dataset.examples[i].id + "'");
    }
    rep.total_queries += r.queries;
    const double ratio = PerturbationRatio(r);
    rep.records.push_back({r.example_id, r.status, r.similarity, ratio, r.queries});
    if (r.error) {
      ++rep.errors;
    } else if (r.status == AttackStatus::kSkippedAlreadyMisclassified) {
      ++rep.skipped;
    } else if (r.status == AttackStatus::kSuccess) {
      ++rep.successes;
      sim_sum += r.similarity;
      ratio_sum += ratio;
    } else {
      ++rep.failures;
    }
  }
  if (rep.num_examples > 0) {
    const double n = static_cast<double>(rep.num_examples);
    rep.original_accuracy = 100.0 * static_cast<double>(rep.successes + rep.failures) / n;
    rep.after_attack_accuracy = 100.0 * static_cast<double>(rep.failures) / n;
  }
  if (rep.successes > 0) {
    rep.avg_similarity = sim_sum / static_cast<double>(rep.successes);
    rep.mean_perturb_ratio = 100.0 * ratio_sum / static_cast<double>(rep.successes);
  }
  return rep;
}

std::string FormatSummaryRow(const EvaluationReport& report) {
  return report.attack_name + " " + Fixed(report.after_attack_accuracy, 2) + " (" +
         (report.avg_similarity ? Fixed(*report.avg_similarity, 3) : "-") + ")";
}

std::string FormatSummaryTable(std::span<const EvaluationReport> reports) {
  std::string out;
  if (reports.empty()) return out;
  out += "Original " + Fixed(reports.front().original_accuracy, 2) + "\n";
  for (const auto& r : reports) out += FormatSummaryRow(r) + "\n";
  return out;
}

std::string ReportJson(std::span<const EvaluationReport> reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    json records = json::array();
    for (const auto& rec : r.records) {
      records.push_back({{"id", rec.id},
                         {"status", AttackStatusName(rec.status)},
                         {"similarity", rec.similarity},
                         {"perturb_ratio", rec.perturb_ratio},
                         {"queries", rec.queries}});
    }
    rows.push_back(
        {{"attack", r.attack_name},
         {"num_examples", r.num_examples},
         {"successes", r.successes},
         {"failures", r.failures},
         {"skipped", r.skipped},
         {"errors", r.errors},
         {"original_accuracy", r.original_accuracy},
         {"after_attack_accuracy", r.after_attack_accuracy},
         {"avg_similarity", r.avg_similarity ? json(*r.avg_similarity) : json(nullptr)},
         {"mean_perturb_ratio",
          r.mean_perturb_ratio ? json(*r.mean_perturb_ratio) : json(nullptr)},
         {"total_queries", r.total_queries},
         {"records", records}});
  }
  return json{{"schema", "bae.report/1"}, {"attacks", rows}}.dump(2) + "\n";
}

std::string ReportCsv(std::span<const EvaluationReport> reports) {
  std::string out =
      "attack,num_examples,original_accuracy,after_attack_accuracy,"
      "avg_similarity,mean_perturb_pct,total_queries\n";
  for (const auto& r : reports) {
    out += r.attack_name + "," + std::to_string(r.num_examples) + "," +
           Fixed(r.original_accuracy, 2) + "," + Fixed(r.after_attack_accuracy, 2) +
           "," + (r.avg_similarity ? Fixed(*r.avg_similarity, 3) : "") + "," +
           (r.mean_perturb_ratio ? Fixed(*r.mean_perturb_ratio, 2) : "") + "," +
           std::to_string(r.total_queries) + "\n";
  }
  return out;
}

AblationSplits ComputeAblationSplits(std::span<const AttackResult> replace,
                                     std::span<const AttackResult> insert,
                                     std::span<const AttackResult> replace_or_insert) {
  auto ids = Ids(replace_or_insert);
  auto sorted_ids = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto reference = sorted_ids(ids);
  if (std::adjacent_find(reference.begin(), reference.end()) != reference.end()) {
    throw MismatchedCorporaError("duplicate example ids in R/I run");
  }
  if (sorted_ids(Ids(replace)) != reference || sorted_ids(Ids(insert)) != reference) {
    throw MismatchedCorporaError("R, I and R/I runs cover different examples");
  }
  AblationSplits s;
  s.num_examples = ids.size();
  const auto succ_r = SuccessIds(replace);
  const auto succ_i = SuccessIds(insert);
  const auto succ_ri = SuccessIds(replace_or_insert);
  s.a_ids = Minus(succ_ri, succ_r);
  s.b_ids = Minus(succ_ri, succ_i);
  std::set<std::string> either;
  std::set_union(succ_r.begin(), succ_r.end(), succ_i.begin(), succ_i.end(),
                 std::inserter(either, either.end()));
  s.c_ids = Minus(succ_ri, either);
  if (s.num_examples > 0) {
    const double n = static_cast<double>(s.num_examples);
    s.a = 100.0 * static_cast<double>(s.a_ids.size()) / n;
    s.b = 100.0 * static_cast<double>(s.b_ids.size()) / n;
    s.c = 100.0 * static_cast<double>(s.c_ids.size()) / n;
  }
  return s;
}

std::string FormatAblationTable(
    std::span<const std::pair<std::string, AblationSplits>> rows) {
  std::string out = "Dataset\tA\tB\tC\n";
  for (const auto& [name, s] : rows) {
    out += name + "\t" + Fixed(s.a, 1) + "\t" + Fixed(s.b, 1) + "\t" + Fixed(s.c, 1) + "\n";
  }
  return out;
}

std::vector<CurvePoint> EffectivenessCurve(
    std::span<const double> caps,
    std::span<const std::vector<AttackResult>> sweep, const Dataset& dataset) {
  if (caps.size() != sweep.size()) {
    throw Error("sweep has " + std::to_string(sweep.size()) + " runs for " +
                std::to_string(caps.size()) + " caps");
  }
  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    curve.push_back({caps[i], Summarize(sweep[i], dataset, "").after_attack_accuracy});
  }
  return curve;
}

bool IsNonIncreasing(std::span<const CurvePoint> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].after_attack_accuracy > curve[i - 1].after_attack_accuracy) return false;
  }
  return true;
}

std::string CurveCsv(std::span<const CurvePoint> curve) {
  std::string out = "max_perturb_pct,after_attack_accuracy\n";
  for (const auto& p : curve) {
    out += Fixed(p.cap * 100.0, 1) + "," + Fixed(p.after_attack_accuracy, 2) + "\n";
  }
  return out;
}

std::string CurveSvg(
    std::span<const std::pair<std::string, std::vector<CurvePoint>>> series,
    std::string_view title) {
  constexpr double kW = 480, kH = 320, kLeft = 50, kRight = 130, kTop = 30, kBottom = 40;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                            "#ff7f0e", "#8c564b"};
  double max_cap = 0.0;
  for (const auto& [name, pts] : series) {
    for (const auto& p : pts) max_cap = std::max(max_cap, p.cap * 100.0);
  }
  if (max_cap <= 0.0) max_cap = 100.0;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto x = [&](double cap) { return kLeft + cap * 100.0 / max_cap * pw; };
  auto y = [&](double acc) { return kTop + (100.0 - acc) / 100.0 * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << kLeft << "\" y=\"18\">" << title << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 100; t += 20) {
    svg << "<text x=\"" << kLeft - 28 << "\" y=\"" << Fixed(y(t) + 4, 1) << "\">" << t
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft << "\" y=\"" << kH - 8
      << "\">max % perturbation (0-" << Fixed(max_cap, 0) << ")</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& [name, pts] = series[s];
    const char* color = kColors[s % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      svg << (i ? " " : "") << Fixed(x(pts[i].cap), 1) << ","
          << Fixed(y(pts[i].after_attack_accuracy), 1);
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kW - kRight + 10 << "\" y=\"" << kTop + 14 * (s + 1)
        << "\" fill=\"" << color << "\">" << name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

HumanEvalPacket ExportHumanEval(const Dataset& dataset, std::span<const NamedRun> runs,
                                std::size_t n, std::uint64_t seed) {
  if (runs.empty()) throw Error("human evaluation needs at least one attack run");
  std::vector<std::map<std::string, const AttackResult*>> by_id(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& res : runs[r].results) by_id[r][res.example_id] = &res;
  }
  std::vector<const Example*> eligible;
  for (const auto& ex : dataset.examples) {
    bool all = true;
    for (const auto& m : by_id) {
      auto it = m.find(ex.id);
      all = all && it != m.end() && it->second->status == AttackStatus::kSuccess;
    }
    if (all) eligible.push_back(&ex);
  }
  if (eligible.size() < n) {
    throw Error("only " + std::to_string(eligible.size()) +
                " examples were attacked successfully by every run; need " +
                std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  SeededShuffle(eligible, rng);
  eligible.resize(n);

  HumanEvalPacket packet;
  packet.seed = seed;
  packet.sources.push_back("original");
  for (const auto& run : runs) packet.sources.push_back(run.name);
  for (const Example* ex : eligible) {
    packet.items.push_back({"", ex->id, "original", Tokenize(ex->text).Text(), ex->label});
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const AttackResult* res = by_id[r].at(ex->id);
      packet.items.push_back(
          {"", ex->id, runs[r].name, res->adversarial.Text(), ex->label});
    }
  }
  SeededShuffle(packet.items, rng);
  char buf[32];
  for (std::size_t i = 0; i < packet.items.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "item-%04zu", i + 1);
    packet.items[i].item_id = buf;
  }
  return packet;
}

std::string AnnotatorSheet(const HumanEvalPacket& packet) {
  std::string out =
      "# For each sentence, predict its class label and rate it on this scale:\n"
      "#   1) Sure adversarial sample\n"
      "#   2) Likely an adversarial example\n"
      "#   3) Neutral\n"
      "#   4) Likely an original sample\n"
      "#   5) Sure original sample\n"
      "# Judge on grammar and how likely the sentence is to come from the\n"
      "# original data. Answer as annotator<TAB>item_id<TAB>label<TAB>score.\n";
  for (const auto& item : packet.items) out += item.item_id + "\t" + item.text + "\n";
  return out;
}

std::string KeyFile(const HumanEvalPacket& packet) {
  std::string out = "# seed " + std::to_string(packet.seed) + "\n# sources";
  for (const auto& s : packet.sources) out += " " + s;
  out += "\n";
  for (const auto& item : packet.items) {
    out += item.item_id + "\t" + item.example_id + "\t" + item.source + "\t" +
           std::to_string(item.true_label.class_index) + "\t" + item.text + "\n";
  }
  return out;
}

HumanEvalPacket ParseKeyFile(std::string_view content) {
  HumanEvalPacket packet;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line(content.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.starts_with("# seed ")) {
      packet.seed = std::stoull(line.substr(7));
      continue;
    }
    if (line.starts_with("# sources")) {
      std::istringstream ss(line.substr(9));
      std::string s;
      while (ss >> s) packet.sources.push_back(s);
      continue;
    }
    if (internal::Trim(line).empty() || line[0] == '#') continue;
    const auto f = SplitTabs(line);
    if (f.size() != 5) throw ParseError(line_no, "expected 5 tab-separated fields");
    packet.items.push_back({f[0], f[1], f[2], f[4], Label{ParseIntField(line_no, f[3])}});
  }
  return packet;
}

std::vector<Annotation> ParseAnnotations(std::string_view content) {
  std::vector<Annotation> out;
  ForEachLine(content, [&](std::size_t line_no, const std::string& line) {
    const auto f = SplitTabs(line);
    if (f.size() != 4) throw ParseError(line_no, "expected annotator, item, label, score");
    Annotation a{internal::Trim(f[0]), internal::Trim(f[1]),
                 Label{ParseIntField(line_no, internal::Trim(f[2]))},
                 ParseIntField(line_no, internal::Trim(f[3]))};
    if (a.score < 1 || a.score > 5) throw ParseError(line_no, "score must be 1-5");
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<HumanEvalRow> AggregateHumanScores(const HumanEvalPacket& packet,
                                               std::span<const Annotation> annotations) {
  std::map<std::string, const HumanEvalItem*> items;
  for (const auto& item : packet.items) items[item.item_id] = &item;
  std::set<std::string> annotators;
  std::map<std::pair<std::string, std::string>, const Annotation*> cell;
  for (const auto& a : annotations) {
    if (!items.contains(a.item_id)) throw Error("annotation for unknown item " + a.item_id);
    if (!cell.emplace(std::make_pair(a.item_id, a.annotator), &a).second) {
      throw Error("duplicate annotation by " + a.annotator + " for " + a.item_id);
    }
    annotators.insert(a.annotator);
  }
  std::vector<std::string> missing;
  for (const auto& item : packet.items) {
    bool complete = !annotators.empty();
    for (const auto& who : annotators) complete = complete && cell.contains({item.item_id, who});
    if (!complete) missing.push_back(item.item_id);
  }
  if (!missing.empty()) throw IncompleteAnnotationsError(std::move(missing));

  struct Acc {
    std::size_t items = 0;
    std::size_t votes = 0;
    std::size_t correct = 0;
    double naturalness = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& item : packet.items) {
    Acc& a = acc[item.source];
    ++a.items;
    double sum = 0.0;
    for (const auto& who : annotators) {
      const Annotation* ann = cell.at({item.item_id, who});
      sum += ann->score;
      ++a.votes;
      if (ann->label == item.true_label) ++a.correct;
    }
    a.naturalness += sum / static_cast<double>(annotators.size());
  }
  std::vector<HumanEvalRow> rows;
  auto emit = [&](const std::string& source) {
    auto it = acc.find(source);
    if (it == acc.end()) return;
    const Acc& a = it->second;
    rows.push_back({source, a.items,
                    100.0 * static_cast<double>(a.correct) / static_cast<double>(a.votes),
                    a.naturalness / static_cast<double>(a.items)});
    acc.erase(it);
  };
  for (const auto& s : packet.sources) emit(s);
  while (!acc.empty()) emit(acc.begin()->first);
  return rows;
}

std::string FormatHumanEvalTable(std::span<const HumanEvalRow> rows) {
  std::string out = "Source\tSentiment Accuracy (%)\tNaturalness (1-5)\n";
  for (const auto& r : rows) {
    out += r.source + "\t" + Fixed(r.sentiment_accuracy, 1) + "\t" +
           Fixed(r.mean_naturalness, 2) + "\n";
  }
  return out;
}

}  // namespace bae

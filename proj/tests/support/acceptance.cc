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

#include "acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "bae/attack.h"
#include "bae/eval.h"
#include "bae/http_backends.h"
#include "bae/ingestion.h"
#include "bae/trainable_backends.h"
#include "cli.h"
#include "mr_corpus.h"
#include "oracle.h"
#include "random_fixture.h"

namespace bae::testing {
namespace {

namespace fs = std::filesystem;

// Times `body` and fills in CheckResult::seconds.
CheckResult Timed(const std::function<CheckResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

std::string Where(std::uint64_t seed, const std::string& id) {
  return "seed " + std::to_string(seed) + " example " + id + ": ";
}

PosTag TagOf(const ToyFixture& f, const std::string& word) {
  auto it = f.pos_table.find(word);
  return it == f.pos_table.end() ? PosTag::kOther : it->second;
}

bool Antonyms(const ToyFixture& f, const std::string& a, const std::string& b) {
  return f.antonym_pairs.contains({a, b}) || f.antonym_pairs.contains({b, a});
}

// Attacks every example of a world and hands each result to `visit`.
template <typename Visit>
void ForEachResult(SeedRange seeds, Visit visit) {
  for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
    const RandomWorld w = MakeRandomWorld(seed);
    const auto results = AttackCorpus(w.fixture.MakeBackends(), w.dataset, w.config);
    for (const auto& r : results) visit(seed, w, r);
  }
}

std::string CompareWithOracle(const RandomWorld& w, const Example& ex) {
  const Backends backends = w.fixture.MakeBackends();
  const Sentence s = Tokenize(ex.text);
  AttackTrace trace;
  const AttackResult got = Attack(backends, s, ex.label, w.config, &trace);
  const OracleOutcome want = ReferenceAttack(w.fixture, s.tokens(), ex.label.class_index, w.config);

  if (got.status != want.status) return "status differs";
  if (got.stop_reason != want.stop_reason) {
    return "stop reason " + std::string(StopReasonName(got.stop_reason)) + " vs " +
           std::string(StopReasonName(want.stop_reason));
  }
  if (got.queries != want.queries) {
    return "queries " + std::to_string(got.queries) + " vs " + std::to_string(want.queries);
  }
  if (got.status != AttackStatus::kSkippedAlreadyMisclassified &&
      trace.importance.order != want.order) {
    return "importance order differs";
  }
  if (trace.steps.size() != want.steps.size()) {
    return "step count " + std::to_string(trace.steps.size()) + " vs " +
           std::to_string(want.steps.size());
  }
  for (std::size_t i = 0; i < want.steps.size(); ++i) {
    const StepOutcome& a = trace.steps[i];
    const OracleStep& b = want.steps[i];
    const std::string step = "step " + std::to_string(i) + ": ";
    if (a.position != b.position) return step + "position differs";
    if (a.evaluated.size() != b.scored.size()) {
      return step + std::to_string(a.evaluated.size()) + " candidates vs " +
             std::to_string(b.scored.size());
    }
    for (std::size_t j = 0; j < b.scored.size(); ++j) {
      const auto& ea = a.evaluated[j];
      const auto& eb = b.scored[j];
      if (ea.candidate.word != eb.word || ea.candidate.op.kind != eb.kind) {
        return step + "candidate " + ea.candidate.word + " vs " + eb.word;
      }
      if (ea.flips != eb.flips) return step + "flip verdict differs for " + eb.word;
      if (std::abs(ea.candidate.similarity - eb.similarity) > 1e-12) {
        return step + "similarity differs for " + eb.word;
      }
      if (std::abs(ea.probs.Prob(ex.label) - eb.p_label) > 1e-12) {
        return step + "P(y) differs for " + eb.word;
      }
    }
    if (a.chosen.has_value() != b.chosen.has_value()) return step + "choice presence differs";
    if (b.chosen) {
      const auto& ca = a.evaluated[*a.chosen].candidate;
      const auto& cb = b.scored[*b.chosen];
      if (ca.word != cb.word || ca.op.kind != cb.kind) {
        return step + "chose " + std::string(OpKindName(ca.op.kind)) + ":" + ca.word +
               ", oracle chose " + std::string(OpKindName(cb.kind)) + ":" + cb.word;
      }
    }
  }
  if (got.ops_applied != want.ops) return "applied ops differ";
  if (got.adversarial.tokens() != want.adversarial) {
    return "adversarial '" + Join(got.adversarial.tokens()) + "' vs '" + Join(want.adversarial) + "'";
  }
  if (got.predicted.class_index != want.predicted) return "prediction differs";
  if (std::abs(got.similarity - want.similarity) > 1e-12) return "final similarity differs";
  if (got.negative_reduction_steps != want.negative_reduction_steps) {
    return "negative reduction count differs";
  }
  if (got.provenance != want.provenance) return "filter provenance differs";
  return {};
}

std::set<std::string> Successes(const std::vector<AttackResult>& results) {
  std::set<std::string> ids;
  for (const auto& r : results) {
    if (r.status == AttackStatus::kSuccess) ids.insert(r.example_id);
  }
  return ids;
}

std::string Fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string ReadAll(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

std::string FilterViolation(const ToyFixture& fixture, const AttackConfig& config,
                            const AttackResult& result) {
  const auto& original = result.original.tokens();
  Sentence current = result.original;
  for (const auto& op : result.ops_applied) {
    const auto index = current.Resolve(op.position);
    if (!index) return "op position does not resolve";
    const std::string& w = op.new_token;
    if (config.stop_words->Contains(w)) return "inserted stop word '" + w + "'";
    if (op.kind == OpKind::kReplace) {
      const std::string& old = current[*index];
      if (TagOf(fixture, w) != TagOf(fixture, old)) {
        return "POS mismatch replacing '" + old + "' with '" + w + "'";
      }
      if (config.sentiment_task && Antonyms(fixture, old, w)) {
        return "antonym '" + w + "' replaced '" + old + "'";
      }
    } else if (config.sentiment_task) {
      // The slot sits between two tokens of the current sentence.
      const std::size_t slot = op.kind == OpKind::kInsertLeft ? *index : *index + 1;
      if (slot > 0 && Antonyms(fixture, current[slot - 1], w)) {
        return "antonym '" + w + "' inserted next to '" + current[slot - 1] + "'";
      }
      if (slot < current.size() && Antonyms(fixture, current[slot], w)) {
        return "antonym '" + w + "' inserted next to '" + current[slot] + "'";
      }
    }
    current = ApplyPerturbation(current, op);
    const double sim = OracleCosine(original, current.tokens());
    if (!(sim >= config.sim_threshold)) {
      return "similarity " + std::to_string(sim) + " below threshold after '" + w + "'";
    }
  }
  return {};
}

std::string StructuralViolation(AttackMode mode, const AttackResult& result) {
  const auto& orig = result.original.tokens();
  const auto& adv = result.adversarial.tokens();
  if (ReplayOps(result.original, result.ops_applied) != result.adversarial) {
    return "replaying ops does not reproduce the adversarial sentence";
  }
  std::size_t inserts = 0;
  for (const auto& op : result.ops_applied) {
    const bool replace = op.kind == OpKind::kReplace;
    inserts += !replace;
    if (mode == AttackMode::kReplace && !replace) return "R mode applied an insert";
    if (mode == AttackMode::kInsert && replace) return "I mode applied a replacement";
  }
  if (adv.size() != orig.size() + inserts) return "length does not match the insert count";
  if (mode == AttackMode::kInsert) {
    std::size_t matched = 0;
    for (const auto& t : adv) {
      if (matched < orig.size() && t == orig[matched]) ++matched;
    }
    if (matched != orig.size()) return "original is not an in-order subsequence";
  }
  return {};
}

CheckResult CheckOracleEquivalence(SeedRange seeds) {
  return Timed([&] {
    std::size_t sentences = 0;
    for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
      const RandomWorld w = MakeRandomWorld(seed);
      for (const auto& ex : w.dataset.examples) {
        ++sentences;
        if (auto why = CompareWithOracle(w, ex); !why.empty()) {
          return CheckResult{false, Where(seed, ex.id) + why};
        }
      }
    }
    return CheckResult{true, std::to_string(seeds.count) + " fixtures, " +
                                 std::to_string(sentences) + " sentences match the oracle"};
  });
}

CheckResult CheckFilterCompliance(SeedRange seeds) {
  return Timed([&] {
    std::size_t ops = 0;
    std::string first;
    ForEachResult(seeds, [&](std::uint64_t seed, const RandomWorld& w, const AttackResult& r) {
      ops += r.ops_applied.size();
      if (first.empty()) {
        if (auto why = FilterViolation(w.fixture, w.config, r); !why.empty()) {
          first = Where(seed, r.example_id) + why;
        }
      }
    });
    if (!first.empty()) return CheckResult{false, first};
    return CheckResult{true, std::to_string(ops) + " applied ops, zero violations"};
  });
}

CheckResult CheckMonotoneBudget(SeedRange seeds) {
  return Timed([&] {
    std::vector<double> caps;
    for (int i = 0; i <= 10; ++i) caps.push_back(i / 10.0);
    for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
      const RandomWorld w = MakeRandomWorld(seed);
      const auto sweep = CappedSweep(w.fixture.MakeBackends(), w.dataset, w.config, caps);
      for (std::size_t j = 1; j < caps.size(); ++j) {
        for (std::size_t i = 0; i < w.dataset.examples.size(); ++i) {
          if (sweep[j - 1][i].status == AttackStatus::kSuccess &&
              sweep[j][i].status != AttackStatus::kSuccess) {
            return CheckResult{false, Where(seed, sweep[j][i].example_id) +
                                          "success lost when the cap grew"};
          }
        }
      }
      const auto curve = EffectivenessCurve(caps, sweep, w.dataset);
      for (std::size_t j = 1; j < curve.size(); ++j) {
        if (curve[j].after_attack_accuracy > curve[j - 1].after_attack_accuracy) {
          return CheckResult{false, "seed " + std::to_string(seed) + ": curve rises"};
        }
      }
    }
    return CheckResult{true, std::to_string(seeds.count) + " fixtures x 11 caps monotone"};
  });
}

CheckResult CheckAblationIdentity(SeedRange seeds) {
  return Timed([&] {
    for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
      const RandomWorld w = MakeRandomWorld(seed);
      const Backends b = w.fixture.MakeBackends();
      std::map<AttackMode, std::vector<AttackResult>> runs;
      for (AttackMode m : {AttackMode::kReplace, AttackMode::kInsert, AttackMode::kReplaceOrInsert}) {
        AttackConfig c = w.config;
        c.mode = m;
        runs[m] = AttackCorpus(b, w.dataset, c);
      }
      const auto& r = runs[AttackMode::kReplace];
      const auto& i = runs[AttackMode::kInsert];
      const auto& ri = runs[AttackMode::kReplaceOrInsert];
      const AblationSplits s = ComputeAblationSplits(r, i, ri);
      const auto sr = Successes(r), si = Successes(i), sri = Successes(ri);
      std::set<std::string> a, bset, c, both;
      for (const auto& id : sri) {
        if (!sr.contains(id)) a.insert(id);
        if (!si.contains(id)) bset.insert(id);
        if (!sr.contains(id) && !si.contains(id)) c.insert(id);
      }
      std::set_intersection(s.a_ids.begin(), s.a_ids.end(), s.b_ids.begin(), s.b_ids.end(),
                            std::inserter(both, both.end()));
      if (s.a_ids != a || s.b_ids != bset || s.c_ids != c || both != s.c_ids) {
        return CheckResult{false, "seed " + std::to_string(seed) + ": C != A intersect B"};
      }
      const double n = static_cast<double>(w.dataset.examples.size());
      const std::string want = "Dataset\tA\tB\tC\nw" + std::to_string(seed) + "\t" +
                               Fmt1(100.0 * a.size() / n) + "\t" + Fmt1(100.0 * bset.size() / n) +
                               "\t" + Fmt1(100.0 * c.size() / n) + "\n";
      const std::vector<std::pair<std::string, AblationSplits>> rows{{"w" + std::to_string(seed), s}};
      if (FormatAblationTable(rows) != want) {
        return CheckResult{false, "seed " + std::to_string(seed) + ": table layout differs"};
      }
    }
    return CheckResult{true, std::to_string(seeds.count) + " fixture triples satisfy C = A n B"};
  });
}

CheckResult CheckStructuralInvariants(SeedRange seeds) {
  return Timed([&] {
    std::size_t checked = 0;
    for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
      const RandomWorld w = MakeRandomWorld(seed);
      const Backends base = w.fixture.MakeBackends();
      for (AttackMode m : {AttackMode::kReplace, AttackMode::kInsert, AttackMode::kReplaceOrInsert,
                           AttackMode::kReplaceThenInsert}) {
        AttackConfig c = w.config;
        c.mode = m;
        for (const auto& ex : w.dataset.examples) {
          Backends b = base;
          auto counter = std::make_shared<CountingClassifier>(*base.classifier);
          b.classifier = counter;
          AttackResult r = Attack(b, Tokenize(ex.text), ex.label, c);
          r.example_id = ex.id;
          ++checked;
          std::string why = StructuralViolation(m, r);
          if (why.empty() && r.queries != counter->queries()) {
            why = "reported " + std::to_string(r.queries) + " queries, made " +
                  std::to_string(counter->queries());
          }
          // The importance probe always runs in full; no candidate may be
          // scored once the budget is spent.
          const std::uint64_t probe = r.original.size() + (r.original.size() > 1 ? 1 : 0);
          if (why.empty() && c.query_budget && r.queries > std::max(*c.query_budget, probe)) {
            why = "query budget exceeded";
          }
          if (!why.empty()) {
            return CheckResult{false, Where(seed, ex.id) + AttackDisplayName(m) + ": " + why};
          }
        }
      }
    }
    return CheckResult{true, std::to_string(checked) + " attacks hold every invariant"};
  });
}

CheckResult CheckDeterminism(SeedRange seeds) {
  return Timed([&] {
    const fs::path dir = fs::temp_directory_path() / "bae_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (std::uint64_t seed = seeds.first; seed < seeds.first + seeds.count; ++seed) {
      const RandomWorld w = MakeRandomWorld(seed);
      const auto fp = RunFingerprint::FromConfig(w.config, w.dataset.name, seed);
      const ResultsFile a{fp, AttackCorpus(w.fixture.MakeBackends(), w.dataset, w.config, 1)};
      const ResultsFile b{fp, AttackCorpus(w.fixture.MakeBackends(), w.dataset, w.config, 4)};
      PersistResults(a, dir / "a.json");
      PersistResults(b, dir / "b.json");
      if (ReadAll(dir / "a.json") != ReadAll(dir / "b.json")) {
        return CheckResult{false, "seed " + std::to_string(seed) + ": result files differ"};
      }
    }
    fs::remove_all(dir);
    return CheckResult{true, std::to_string(seeds.count) + " repeated runs byte-identical"};
  });
}

CheckResult CheckDirectional(const DirectionalOptions& options) {
  return Timed([&] {
    const MrCorpus corpus = MakeMrStyleCorpus(options.seed, options.train_size, options.test_size);
    auto classifier = std::make_shared<BowLogisticClassifier>(BowLogisticClassifier::Train(corpus.train));
    Backends b;
    b.classifier = classifier;
    if (!options.mlm_url.empty()) {
      b.mlm = std::make_shared<HttpMaskedLM>(HttpEndpoint{options.mlm_url, 60.0});
    } else {
      std::vector<std::string> texts;
      for (const auto& ex : corpus.train.examples) texts.push_back(ex.text);
      b.mlm = std::make_shared<CorpusMaskedLM>(CorpusMaskedLM::Build(texts));
    }
    b.encoder = std::make_shared<BowCosineEncoder>();
    b.pos = std::make_shared<LexiconPosTagger>(corpus.pos_lexicon, true);
    b.antonyms = std::make_shared<PairAntonymLexicon>(corpus.antonyms);

    AttackConfig config;
    config.sentiment_task = true;
    std::map<AttackMode, EvaluationReport> reports;
    const AttackMode modes[] = {AttackMode::kReplace, AttackMode::kInsert,
                                AttackMode::kReplaceOrInsert, AttackMode::kReplaceThenInsert};
    for (AttackMode m : modes) {
      config.mode = m;
      const auto results = AttackCorpus(b, corpus.test, config, options.jobs);
      reports[m] = Summarize(results, corpus.test, AttackDisplayName(m));
    }
    auto rate = [](const EvaluationReport& r) {
      const std::size_t attacked = r.successes + r.failures;
      return attacked ? static_cast<double>(r.successes) / attacked : 0.0;
    };
    std::string detail = "original " + Fmt1(reports[modes[0]].original_accuracy);
    bool all_drop = true;
    for (AttackMode m : modes) {
      const auto& r = reports[m];
      detail += ", " + r.attack_name + " " + Fmt1(r.after_attack_accuracy);
      all_drop = all_drop && r.errors == 0 && r.after_attack_accuracy < r.original_accuracy;
    }
    const double strongest = rate(reports[AttackMode::kReplaceThenInsert]);
    int inversions = 0;
    for (AttackMode m : {AttackMode::kReplace, AttackMode::kInsert, AttackMode::kReplaceOrInsert}) {
      inversions += strongest < rate(reports[m]);
    }
    detail += "; R+I below another mode " + std::to_string(inversions) + "x";
    detail += options.mlm_url.empty() ? " (corpus MLM)" : " (HTTP MLM)";
    return CheckResult{all_drop && inversions <= 1, detail};
  });
}

CheckResult CheckReportFidelity(const std::string& data_dir) {
  return Timed([&] {
    const fs::path data(data_dir);
    const fs::path out = fs::temp_directory_path() / "bae_report_fidelity";
    fs::remove_all(out);
    const cli::EnvLookup env = [](std::string_view name) -> std::optional<std::string> {
      if (name == "SOURCE_DATE_EPOCH") return "1700000000";
      return std::nullopt;
    };
    std::ostringstream sink, err;
    const std::string tsv = (data / "toy.tsv").string();
    const std::string cfg = (data / "toy.cfg").string();
    if (cli::Run({"attack", "--dataset", tsv, "--backends", cfg, "--mode", "R", "--out",
                  (out / "attack").string()},
                 sink, err, env) != 0 ||
        cli::Run({"curve", "--dataset", tsv, "--backends", cfg, "--out", (out / "curve").string()},
                 sink, err, env) != 0) {
      return CheckResult{false, "CLI failed: " + err.str()};
    }
    const std::pair<fs::path, std::string> goldens[] = {
        {out / "attack" / "summary.txt", "toy_R_summary.txt"},
        {out / "attack" / "results.json", "toy_R_results.json"},
        {out / "attack" / "report.csv", "toy_R_report.csv"},
        {out / "curve" / "curve_R.csv", "curve_R.csv"},
        {out / "curve" / "curve_I.csv", "curve_I.csv"},
        {out / "curve" / "curve_R_or_I.csv", "curve_R_or_I.csv"},
        {out / "curve" / "curve_R_plus_I.csv", "curve_R_plus_I.csv"},
    };
    for (const auto& [produced, golden] : goldens) {
      if (ReadAll(produced) != ReadAll(data / "golden" / golden)) {
        return CheckResult{false, golden + " differs from the golden file"};
      }
    }
    const std::regex row(R"(BAE-(R|I|R/I|R\+I) \d+\.\d{2} \((\d\.\d{3}|-)\))");
    std::istringstream summary(ReadAll(out / "attack" / "summary.txt"));
    std::string line;
    std::getline(summary, line);
    if (!std::regex_match(line, std::regex(R"(Original \d+\.\d{2})"))) {
      return CheckResult{false, "bad header line '" + line + "'"};
    }
    while (std::getline(summary, line)) {
      if (!std::regex_match(line, row)) return CheckResult{false, "bad row '" + line + "'"};
    }
    for (const char* slug : {"R", "I", "R_or_I", "R_plus_I"}) {
      std::istringstream csv(ReadAll(out / "curve" / ("curve_" + std::string(slug) + ".csv")));
      std::getline(csv, line);
      double prev = 101.0;
      int rows = 0;
      while (std::getline(csv, line)) {
        const double acc = std::stod(line.substr(line.find(',') + 1));
        if (acc > prev) return CheckResult{false, std::string(slug) + " curve rises"};
        prev = acc;
        ++rows;
      }
      if (rows != 10) return CheckResult{false, std::string(slug) + " curve needs 10 points"};
    }
    fs::remove_all(out);
    return CheckResult{true, "summary, results and 4 curve CSVs match golden files"};
  });
}

}  // namespace bae::testing

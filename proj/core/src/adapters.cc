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

#include "bae/adapters.h"

#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bae/errors.h"
#include "bae/http_backends.h"
#include "bae/ingestion.h"
#include "bae/toy_backends.h"
#include "bae/trainable_backends.h"
#include "io_util.h"

namespace bae {
namespace {

namespace pt = boost::property_tree;

// Typed accessors over one INI section that report dotted field paths.
class Section {
 public:
  Section(std::string name, const pt::ptree& tree, std::filesystem::path base_dir)
      : name_(std::move(name)), tree_(tree), base_dir_(std::move(base_dir)) {}

  void AllowOnly(std::initializer_list<std::string_view> keys) const {
    std::set<std::string_view> allowed(keys);
    for (const auto& [key, value] : tree_) {
      if (!allowed.contains(key)) throw ConfigError(Path(key), "unknown key");
    }
  }

  bool Has(const std::string& key) const { return tree_.find(key) != tree_.not_found(); }

  std::string String(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(key);
    if (!v) throw ConfigError(Path(key), "required");
    std::string s = internal::Trim(*v);
    if (s.empty()) throw ConfigError(Path(key), "must not be empty");
    return s;
  }

  std::filesystem::path File(const std::string& key) const {
    std::filesystem::path p = String(key);
    if (p.is_relative()) p = base_dir_ / p;
    if (!std::filesystem::exists(p)) throw ConfigError(Path(key), "no such file " + p.string());
    return p;
  }

  template <typename T>
  std::optional<T> Optional(const std::string& key) const {
    if (!Has(key)) return std::nullopt;
    const std::string raw = String(key);
    std::istringstream in(raw);
    T value{};
    if constexpr (std::is_same_v<T, bool>) {
      if (raw == "true" || raw == "1" || raw == "yes") return true;
      if (raw == "false" || raw == "0" || raw == "no") return false;
      throw ConfigError(Path(key), "expected a boolean");
    } else {
      in >> value;
      if (!in || !in.eof()) throw ConfigError(Path(key), "cannot parse '" + raw + "'");
      return value;
    }
  }

  std::string Path(std::string_view key) const { return name_ + "." + std::string(key); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const pt::ptree& tree_;
  std::filesystem::path base_dir_;
};

class Loader {
 public:
  Loader(const pt::ptree& root, std::filesystem::path base_dir)
      : root_(root), base_dir_(std::move(base_dir)) {}

  AdapterConfig Load() {
    for (const auto& [name, tree] : root_) {
      static const std::set<std::string> kSections = {"classifier", "mlm", "encoder",
                                                       "pos", "antonyms", "attack"};
      if (!kSections.contains(name)) throw ConfigError(name, "unknown section");
    }
    AdapterConfig cfg;
    cfg.backends.classifier = Classifier(Get("classifier"), cfg.victim);
    cfg.backends.mlm = Mlm(Get("mlm"));
    cfg.backends.encoder = Encoder(Get("encoder"));
    cfg.backends.pos = Pos(Get("pos"));
    cfg.backends.antonyms = Antonyms(Get("antonyms"));
    if (auto it = root_.find("attack"); it != root_.not_found()) {
      Attack(Section("attack", it->second, base_dir_), cfg);
    }
    cfg.attack.Validate();
    return cfg;
  }

 private:
  Section Get(const std::string& name) const {
    auto it = root_.find(name);
    if (it == root_.not_found()) throw ConfigError(name, "section missing");
    return Section(name, it->second, base_dir_);
  }

  std::shared_ptr<const ToyFixture> Fixture(const Section& s) {
    const auto path = std::filesystem::weakly_canonical(s.File("fixture"));
    auto& slot = fixtures_[path.string()];
    if (!slot) slot = std::make_shared<const ToyFixture>(ToyFixture::Load(path));
    return slot;
  }

  HttpEndpoint Endpoint(const Section& s) const {
    HttpEndpoint e{s.String("url")};
    if (!e.base_url.starts_with("http://") && !e.base_url.starts_with("https://")) {
      throw ConfigError(s.Path("url"), "must start with http:// or https://");
    }
    e.timeout_seconds = s.Optional<double>("timeout").value_or(30.0);
    if (!(e.timeout_seconds > 0)) throw ConfigError(s.Path("timeout"), "must be > 0");
    return e;
  }

  std::shared_ptr<const ClassifierBackend> Classifier(const Section& s,
                                                      std::map<std::string, std::string>& victim) {
    s.AllowOnly({"kind", "fixture", "train", "epochs", "learning_rate", "l2", "url",
                 "num_classes", "timeout", "model", "checkpoint", "device", "num_filters",
                 "filter_sizes", "dropout", "hidden_units", "fine_tune_epochs",
                 "fine_tune_learning_rate"});
    // Victim metadata: checked for shape, recorded, never trained here.
    for (const char* key : {"model", "checkpoint", "device", "filter_sizes"}) {
      if (s.Has(key)) victim[key] = s.String(key);
    }
    if (s.Has("filter_sizes")) {
      std::istringstream in(victim["filter_sizes"]);
      std::string part;
      while (std::getline(in, part, ',')) {
        try {
          if (std::stoi(part) < 1) throw std::invalid_argument("size");
        } catch (const std::exception&) {
          throw ConfigError(s.Path("filter_sizes"), "expected comma-separated positive sizes");
        }
      }
    }
    for (const char* key : {"num_filters", "hidden_units", "fine_tune_epochs"}) {
      if (auto v = s.Optional<int>(key)) {
        if (*v < 1) throw ConfigError(s.Path(key), "must be >= 1");
        victim[key] = std::to_string(*v);
      }
    }
    if (auto v = s.Optional<double>("dropout")) {
      if (*v < 0 || *v >= 1) throw ConfigError(s.Path("dropout"), "must lie in [0, 1)");
      victim["dropout"] = s.String("dropout");
    }
    if (auto v = s.Optional<double>("fine_tune_learning_rate")) {
      if (!(*v > 0)) throw ConfigError(s.Path("fine_tune_learning_rate"), "must be > 0");
      victim["fine_tune_learning_rate"] = s.String("fine_tune_learning_rate");
    }

    const std::string kind = s.String("kind");
    if (kind == "toy") return std::make_shared<ToyClassifier>(Fixture(s));
    if (kind == "bow_logreg") {
      const auto path = s.File("train");
      LogRegOptions opts;
      opts.epochs = s.Optional<int>("epochs").value_or(opts.epochs);
      opts.learning_rate = s.Optional<double>("learning_rate").value_or(opts.learning_rate);
      opts.l2 = s.Optional<double>("l2").value_or(opts.l2);
      if (opts.epochs < 1) throw ConfigError(s.Path("epochs"), "must be >= 1");
      LoadOptions lo;
      lo.split = Split::kTrain;
      const Dataset train = LoadDataset(path, FormatForPath(path), lo);
      return std::make_shared<BowLogisticClassifier>(BowLogisticClassifier::Train(train, opts));
    }
    if (kind == "http") {
      const int n = s.Optional<int>("num_classes").value_or(2);
      if (n < 2) throw ConfigError(s.Path("num_classes"), "must be >= 2");
      return std::make_shared<HttpClassifier>(Endpoint(s), n);
    }
    throw ConfigError(s.Path("kind"), "unknown classifier kind '" + kind + "'");
  }

  std::shared_ptr<const MaskedLMBackend> Mlm(const Section& s) {
    s.AllowOnly({"kind", "fixture", "corpus", "alpha", "url", "timeout", "model", "device"});
    const std::string kind = s.String("kind");
    if (kind == "toy") return std::make_shared<ToyMaskedLM>(Fixture(s));
    if (kind == "corpus") {
      const auto path = s.File("corpus");
      LoadOptions lo;
      lo.split = Split::kTrain;
      const Dataset ds = LoadDataset(path, FormatForPath(path), lo);
      std::vector<std::string> texts;
      for (const auto& ex : ds.examples) texts.push_back(ex.text);
      const double alpha = s.Optional<double>("alpha").value_or(0.1);
      if (!(alpha > 0)) throw ConfigError(s.Path("alpha"), "must be > 0");
      return std::make_shared<CorpusMaskedLM>(CorpusMaskedLM::Build(texts, alpha));
    }
    if (kind == "http") return std::make_shared<HttpMaskedLM>(Endpoint(s));
    throw ConfigError(s.Path("kind"), "unknown mlm kind '" + kind + "'");
  }

  std::shared_ptr<const SentenceEncoderBackend> Encoder(const Section& s) {
    s.AllowOnly({"kind", "fixture", "url", "timeout", "model", "device"});
    const std::string kind = s.String("kind");
    if (kind == "toy" || kind == "bow") return std::make_shared<BowCosineEncoder>();
    if (kind == "http") return std::make_shared<HttpEncoder>(Endpoint(s));
    throw ConfigError(s.Path("kind"), "unknown encoder kind '" + kind + "'");
  }

  std::shared_ptr<const PosTaggerBackend> Pos(const Section& s) {
    s.AllowOnly({"kind", "fixture", "path", "suffix_fallback", "url", "timeout"});
    const std::string kind = s.String("kind");
    if (kind == "toy") return std::make_shared<LexiconPosTagger>(Fixture(s)->pos_table);
    if (kind == "lexicon") {
      return std::make_shared<LexiconPosTagger>(LexiconPosTagger::Load(
          s.File("path"), s.Optional<bool>("suffix_fallback").value_or(false)));
    }
    if (kind == "http") return std::make_shared<HttpPosTagger>(Endpoint(s));
    throw ConfigError(s.Path("kind"), "unknown pos kind '" + kind + "'");
  }

  std::shared_ptr<const AntonymLexicon> Antonyms(const Section& s) {
    s.AllowOnly({"kind", "fixture", "path"});
    const std::string kind = s.String("kind");
    if (kind == "toy") return std::make_shared<PairAntonymLexicon>(Fixture(s)->antonym_pairs);
    if (kind == "file") {
      return std::make_shared<PairAntonymLexicon>(PairAntonymLexicon::Load(s.File("path")));
    }
    if (kind == "none") return std::make_shared<PairAntonymLexicon>();
    throw ConfigError(s.Path("kind"), "unknown antonyms kind '" + kind + "'");
  }

  void Attack(const Section& s, AdapterConfig& cfg) {
    s.AllowOnly({"mode", "k", "sim_threshold", "max_perturb", "query_budget",
                 "sentiment_task", "stopwords"});
    AttackConfig& a = cfg.attack;
    if (s.Has("mode")) {
      auto mode = ParseAttackMode(s.String("mode"));
      if (!mode) throw ConfigError(s.Path("mode"), "expected R, I, R/I or R+I");
      a.mode = *mode;
    }
    if (auto k = s.Optional<long long>("k")) {
      if (*k < 1) throw ConfigError(s.Path("k"), "must be >= 1");
      a.k = static_cast<std::size_t>(*k);
    }
    if (auto t = s.Optional<double>("sim_threshold")) {
      if (!(*t >= -1 && *t <= 1)) throw ConfigError(s.Path("sim_threshold"), "must lie in [-1, 1]");
      a.sim_threshold = *t;
    }
    if (auto r = s.Optional<double>("max_perturb")) {
      if (!(*r >= 0)) throw ConfigError(s.Path("max_perturb"), "must be >= 0");
      a.max_perturb_ratio = *r;
    }
    if (auto q = s.Optional<long long>("query_budget")) {
      if (*q < 1) throw ConfigError(s.Path("query_budget"), "must be >= 1");
      a.query_budget = static_cast<std::uint64_t>(*q);
    }
    if (auto st = s.Optional<bool>("sentiment_task")) {
      a.sentiment_task = *st;
      cfg.sentiment_task_set = true;
    }
    if (s.Has("stopwords")) a.stop_words = StopWords::Load(s.File("stopwords"));
  }

  const pt::ptree& root_;
  std::filesystem::path base_dir_;
  std::map<std::string, std::shared_ptr<const ToyFixture>> fixtures_;
};

}  // namespace

AdapterConfig ParseAdapterConfig(std::string_view ini_text,
                                 const std::filesystem::path& base_dir) {
  pt::ptree root;
  std::istringstream in{std::string(ini_text)};
  try {
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", "line " + std::to_string(e.line()) + ": " + e.message());
  }
  try {
    return Loader(root, base_dir).Load();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("config", e.what());
  }
}

AdapterConfig LoadAdapterConfig(const std::filesystem::path& path) {
  std::string text;
  try {
    text = internal::ReadFile(path);
  } catch (const Error&) {
    throw ConfigError("config", "cannot read " + path.string());
  }
  return ParseAdapterConfig(text, path.parent_path());
}

}  // namespace bae

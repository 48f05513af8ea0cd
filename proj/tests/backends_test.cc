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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "bae/adapters.h"
#include "bae/attack_config.h"
#include "bae/errors.h"
#include "bae/toy_backends.h"
#include "bae/trainable_backends.h"
#include "test_paths.h"

namespace bae {
namespace {

// Written out by hand rather than calling Logistic().
double ExpectedLogistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::shared_ptr<const ToyFixture> GoodTerrible() {
  auto f = std::make_shared<ToyFixture>();
  f->weights = {{"good", 2.0}, {"terrible", -2.0}};
  return f;
}

TEST(ToyClassifier, FixtureFormula) {
  ToyClassifier clf(GoodTerrible());
  EXPECT_NEAR(clf.Predict("the food was good")[1], ExpectedLogistic(2.0), 1e-12);
  EXPECT_NEAR(clf.Predict("the food was good")[1], 0.8808, 1e-4);
  EXPECT_DOUBLE_EQ(clf.Predict("the food was")[1], 0.5);
  EXPECT_DOUBLE_EQ(clf.Predict("terrible good")[1], 0.5);
  EXPECT_EQ(clf.num_classes(), 2);
}

TEST(ToyClassifier, CountsDistinctTokensOnce) {
  ToyClassifier clf(GoodTerrible());
  EXPECT_DOUBLE_EQ(clf.Predict("good good good")[1], clf.Predict("good")[1]);
}

TEST(ToyClassifier, IsDeterministic) {
  ToyClassifier clf(GoodTerrible());
  EXPECT_EQ(clf.Predict("good movie"), clf.Predict("good movie"));
}

TEST(BowCosine, Examples) {
  BowCosineEncoder enc;
  EXPECT_DOUBLE_EQ(enc.Similarity("the food was good", "the food was good"), 1.0);
  EXPECT_DOUBLE_EQ(enc.Similarity("the food was good", "the food was nice"),
                   3.0 / std::sqrt(4.0 * 4.0));
  EXPECT_DOUBLE_EQ(enc.Similarity("the food was good", "the food was nice"), 0.75);
  EXPECT_DOUBLE_EQ(enc.Similarity("a b", "c d"), 0.0);
}

TEST(BowCosine, SymmetricAndReflexive) {
  BowCosineEncoder enc;
  const std::vector<std::string> texts = {"a b c", "a a d", "e", "b c d e f"};
  for (const auto& x : texts) {
    EXPECT_NEAR(enc.Similarity(x, x), 1.0, 1e-12);
    for (const auto& y : texts) {
      EXPECT_NEAR(enc.Similarity(x, y), enc.Similarity(y, x), 1e-12);
    }
  }
}

TEST(ToyMaskedLM, LooksUpContext) {
  auto f = std::make_shared<ToyFixture>();
  f->mlm_table[{"was", std::string(kEndContext)}] = {"bad", "nice", "ok"};
  ToyMaskedLM mlm(f);
  const std::vector<std::string> masked = {"the", "food", "was", std::string(kMaskToken)};
  const auto top2 = mlm.PredictMask(masked, 2);
  ASSERT_EQ(top2.size(), 2u);
  EXPECT_EQ(top2[0].word, "bad");
  EXPECT_EQ(top2[1].word, "nice");
  EXPECT_GE(top2[0].score, top2[1].score);

  const std::vector<std::string> other = {std::string(kMaskToken), "food"};
  EXPECT_TRUE(mlm.PredictMask(other, 5).empty());
}

TEST(ToyMaskedLM, RequiresExactlyOneMask) {
  ToyMaskedLM mlm(std::make_shared<ToyFixture>());
  const std::vector<std::string> none = {"a", "b"};
  const std::vector<std::string> two = {std::string(kMaskToken), std::string(kMaskToken)};
  EXPECT_THROW(mlm.PredictMask(none, 3), BackendError);
  EXPECT_THROW(mlm.PredictMask(two, 3), BackendError);
}

TEST(ToyFixture, ValidateRequiresPosForCandidates) {
  ToyFixture f;
  f.mlm_table[{"a", "b"}] = {"c"};
  EXPECT_THROW(f.Validate(), ConfigError);
  f.pos_table["c"] = PosTag::kNoun;
  EXPECT_NO_THROW(f.Validate());
}

TEST(ToyFixture, JsonRoundTrip) {
  const ToyFixture f = ToyFixture::Load(test::DataPath("toy.json"));
  const ToyFixture g = ToyFixture::FromJson(f.ToJson());
  EXPECT_EQ(f.ToJson(), g.ToJson());
  EXPECT_EQ(f.weights, g.weights);
  EXPECT_EQ(f.mlm_table, g.mlm_table);
  EXPECT_EQ(f.antonym_pairs, g.antonym_pairs);
}

TEST(ToyFixture, RejectsWrongSchema) {
  EXPECT_THROW(ToyFixture::FromJson(R"({"schema": "other/1"})"), ConfigError);
  EXPECT_THROW(ToyFixture::FromJson("not json"), ConfigError);
}

TEST(PairAntonymLexicon, Symmetric) {
  PairAntonymLexicon lex({UnorderedPair("good", "bad")});
  EXPECT_TRUE(lex.AreAntonyms("good", "bad"));
  EXPECT_TRUE(lex.AreAntonyms("bad", "good"));
  EXPECT_FALSE(lex.AreAntonyms("good", "nice"));
}

TEST(LexiconPosTagger, OneTagPerToken) {
  LexiconPosTagger tagger({{"food", PosTag::kNoun}});
  const std::vector<std::string> toks = {"the", "food", "quickly"};
  const auto tags = tagger.TagTokens(toks);
  ASSERT_EQ(tags.size(), 3u);
  EXPECT_EQ(tags[1], PosTag::kNoun);
  EXPECT_EQ(tags[2], PosTag::kOther);
  LexiconPosTagger guessing({}, true);
  EXPECT_EQ(guessing.TagTokens(toks)[2], PosTag::kAdv);
}

TEST(StopWords, ShippedFileMatchesBuiltInList) {
  const auto shipped = StopWords::Load(test::DataDir() / ".." / ".." / "data" / "stopwords_en.txt");
  EXPECT_EQ(shipped->words(), StopWords::Default()->words());
  EXPECT_TRUE(StopWords::Default()->Contains("the"));
  EXPECT_FALSE(StopWords::Default()->Contains("good"));
}

TEST(CountingClassifier, CountsEveryCall) {
  ToyClassifier clf(GoodTerrible());
  CountingClassifier counter(clf);
  counter.Predict("a");
  counter.Predict("b");
  EXPECT_EQ(counter.queries(), 2u);
}

class AdapterConfigTest : public ::testing::Test {
 protected:
  std::string Base() const {
    return "[classifier]\nkind = toy\nfixture = toy.json\n"
           "[mlm]\nkind = toy\nfixture = toy.json\n"
           "[encoder]\nkind = toy\n"
           "[pos]\nkind = toy\nfixture = toy.json\n"
           "[antonyms]\nkind = toy\nfixture = toy.json\n";
  }
  AdapterConfig Parse(const std::string& text) const {
    return ParseAdapterConfig(text, test::DataDir());
  }
  std::string FieldOf(const std::string& text) const {
    try {
      Parse(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "<no error>";
  }
};

TEST_F(AdapterConfigTest, ToyConfigBuildsBackends) {
  const AdapterConfig cfg = LoadAdapterConfig(test::DataPath("toy.cfg"));
  EXPECT_NO_THROW(cfg.backends.Validate());
  EXPECT_EQ(cfg.attack.sim_threshold, 0.7);
  EXPECT_TRUE(cfg.sentiment_task_set);
  EXPECT_NEAR(cfg.backends.classifier->Predict("the food was good")[1], 0.8808, 1e-4);
}

TEST_F(AdapterConfigTest, DefaultsAreFiftyCandidatesAndPointEight) {
  const AdapterConfig cfg = Parse(Base() + "[attack]\nk = 50\nsim_threshold = 0.8\n");
  EXPECT_EQ(cfg.attack.k, 50u);
  EXPECT_DOUBLE_EQ(cfg.attack.sim_threshold, 0.8);
  const AdapterConfig bare = Parse(Base());
  EXPECT_EQ(bare.attack.k, 50u);
  EXPECT_DOUBLE_EQ(bare.attack.sim_threshold, 0.8);
  EXPECT_FALSE(bare.sentiment_task_set);
}

TEST_F(AdapterConfigTest, MissingClassifierSection) {
  const std::string text = Base().substr(Base().find("[mlm]"));
  EXPECT_EQ(FieldOf(text), "classifier");
}

TEST_F(AdapterConfigTest, FieldPathsOnViolations) {
  EXPECT_EQ(FieldOf(Base() + "[attack]\nk = 0\n"), "attack.k");
  EXPECT_EQ(FieldOf(Base() + "[attack]\nk = many\n"), "attack.k");
  EXPECT_EQ(FieldOf(Base() + "[attack]\nsim_threshold = 1.5\n"), "attack.sim_threshold");
  EXPECT_EQ(FieldOf(Base() + "[attack]\nmode = X\n"), "attack.mode");
  EXPECT_EQ(FieldOf(Base() + "[attack]\ncolour = blue\n"), "attack.colour");
  EXPECT_EQ(FieldOf(Base() + "[extra]\na = 1\n"), "extra");
  EXPECT_EQ(FieldOf(Base() + "[attack]\nstopwords = nope.txt\n"), "attack.stopwords");
}

TEST_F(AdapterConfigTest, VictimMetadataIsValidated) {
  auto with = [&](const std::string& extra) {
    std::string text = Base();
    text.insert(text.find("[mlm]"), extra);
    return text;
  };
  const AdapterConfig cfg = Parse(with(
      "model = wordCNN\nnum_filters = 100\nfilter_sizes = 3,4,5\ndropout = 0.3\n"
      "fine_tune_learning_rate = 2e-5\n"));
  EXPECT_EQ(cfg.victim.at("model"), "wordCNN");
  EXPECT_EQ(cfg.victim.at("num_filters"), "100");
  EXPECT_EQ(cfg.victim.at("filter_sizes"), "3,4,5");
  EXPECT_EQ(FieldOf(with("filter_sizes = 3,x\n")), "classifier.filter_sizes");
  EXPECT_EQ(FieldOf(with("dropout = 1.5\n")), "classifier.dropout");
  EXPECT_EQ(FieldOf(with("num_filters = 0\n")), "classifier.num_filters");
}

TEST_F(AdapterConfigTest, UnknownKindsAndMissingFiles) {
  std::string text = Base();
  text.replace(text.find("kind = toy"), 10, "kind = gpt");
  EXPECT_EQ(FieldOf(text), "classifier.kind");
  text = Base();
  text.replace(text.find("fixture = toy.json"), 18, "fixture = missing.json");
  EXPECT_EQ(FieldOf(text), "classifier.fixture");
}

TEST_F(AdapterConfigTest, HttpAdaptersParseWithoutConnecting) {
  const std::string text =
      "[classifier]\nkind = http\nurl = http://127.0.0.1:9\nnum_classes = 2\n"
      "[mlm]\nkind = http\nurl = http://127.0.0.1:9\n"
      "[encoder]\nkind = http\nurl = http://127.0.0.1:9\n"
      "[pos]\nkind = http\nurl = http://127.0.0.1:9\n"
      "[antonyms]\nkind = none\n";
  const AdapterConfig cfg = Parse(text);
  EXPECT_EQ(cfg.backends.classifier->num_classes(), 2);
  // Nothing listens on the discard port, so calls surface as BackendError.
  EXPECT_THROW(cfg.backends.classifier->Predict("x"), BackendError);
  EXPECT_EQ(FieldOf("[classifier]\nkind = http\nurl = ftp://x\n"), "classifier.url");
}

TEST_F(AdapterConfigTest, TrainableBackends) {
  const std::string text =
      "[classifier]\nkind = bow_logreg\ntrain = toy.tsv\nepochs = 50\n"
      "[mlm]\nkind = corpus\ncorpus = toy.tsv\n"
      "[encoder]\nkind = bow\n"
      "[pos]\nkind = toy\nfixture = toy.json\n"
      "[antonyms]\nkind = none\n";
  const AdapterConfig cfg = Parse(text);
  const std::vector<std::string> masked = {"the", std::string(kMaskToken), "was"};
  const auto preds = cfg.backends.mlm->PredictMask(masked, 3);
  ASSERT_FALSE(preds.empty());
  EXPECT_EQ(cfg.backends.classifier->num_classes(), 2);
}

TEST(BowLogistic, LearnsSeparableData) {
  Dataset train;
  train.num_classes = 2;
  for (int i = 0; i < 20; ++i) {
    train.examples.push_back({std::to_string(2 * i + 1), "great fun film", Label{1}});
    train.examples.push_back({std::to_string(2 * i + 2), "awful dull film", Label{0}});
  }
  const auto clf = BowLogisticClassifier::Train(train, {});
  EXPECT_DOUBLE_EQ(clf.Accuracy(train), 1.0);
  EXPECT_GT(clf.Predict("great")[1], 0.5);
  EXPECT_LT(clf.Predict("awful")[1], 0.5);
  // Deterministic training.
  EXPECT_EQ(clf.Predict("great film"), BowLogisticClassifier::Train(train, {}).Predict("great film"));
}

TEST(CorpusMaskedLM, ContextScoringAndContract) {
  const auto lm = CorpusMaskedLM::Build({"the food was good", "the food was bad",
                                         "the meal was good", "a film was good ."});
  const std::vector<std::string> masked = {"the", "food", "was", std::string(kMaskToken)};
  const auto preds = lm.PredictMask(masked, 3);
  ASSERT_EQ(preds.size(), 3u);
  EXPECT_EQ(preds[0].word, "good");
  for (std::size_t i = 1; i < preds.size(); ++i) EXPECT_GE(preds[i - 1].score, preds[i].score);
  for (const auto& p : preds) EXPECT_NE(p.word, ".");
  EXPECT_TRUE(lm.PredictMask(masked, 0).empty());
  const std::vector<std::string> bad = {"the"};
  EXPECT_THROW(lm.PredictMask(bad, 3), BackendError);
}

}  // namespace
}  // namespace bae

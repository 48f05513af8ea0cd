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

#include "bae/attack_config.h"

#include <cmath>
#include <fstream>

#include "bae/errors.h"

namespace bae {
namespace {

// English stop words, version "en-v1". Mirrors the widely used 179-word
// list; data/stopwords_en.txt carries the same words.
constexpr std::string_view kEnglishStopWords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
    "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
    "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
    "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
    "be", "been", "being", "have", "has", "had", "having", "do", "does",
    "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
    "as", "until", "while", "of", "at", "by", "for", "with", "about",
    "against", "between", "into", "through", "during", "before", "after",
    "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
    "over", "under", "again", "further", "then", "once", "here", "there",
    "when", "where", "why", "how", "all", "any", "both", "each", "few",
    "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
    "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
    "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
    "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
    "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
    "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
    "won't", "wouldn", "wouldn't",
};

}  // namespace

std::shared_ptr<const StopWords> StopWords::Default() {
  static const std::shared_ptr<const StopWords> kDefault = [] {
    std::set<std::string, std::less<>> words;
    for (auto w : kEnglishStopWords) words.emplace(w);
    return std::make_shared<const StopWords>(std::move(words), "en-v1");
  }();
  return kDefault;
}

std::shared_ptr<const StopWords> StopWords::Load(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open stop-word file");
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return std::make_shared<const StopWords>(std::move(words),
                                           "file:" + path.filename().string());
}

void AttackConfig::Validate() const {
  if (k < 1) throw ConfigError("attack.k", "must be >= 1");
  if (!(sim_threshold >= -1.0 && sim_threshold <= 1.0)) {
    throw ConfigError("attack.sim_threshold", "must lie in [-1, 1]");
  }
  if (max_perturb_ratio && !(*max_perturb_ratio >= 0.0)) {
    throw ConfigError("attack.max_perturb", "must be >= 0");
  }
  if (!stop_words) throw ConfigError("attack.stopwords", "missing list");
}

std::optional<std::size_t> AttackConfig::MaxOps(
    std::size_t original_tokens) const {
  if (!max_perturb_ratio) return std::nullopt;
  // Epsilon keeps 0.3 * 10 from landing on 2.999....
  return static_cast<std::size_t>(
      std::floor(*max_perturb_ratio * static_cast<double>(original_tokens) + 1e-9));
}

}  // namespace bae

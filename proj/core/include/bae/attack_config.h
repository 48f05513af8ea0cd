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

#ifndef BAE_ATTACK_CONFIG_H_
#define BAE_ATTACK_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "bae/core.h"

namespace bae {

class StopWords {
 public:
  // The pinned built-in English list.
  static std::shared_ptr<const StopWords> Default();
  // One word per line; blank lines and '#' comments ignored.
  static std::shared_ptr<const StopWords> Load(const std::filesystem::path& path);

  explicit StopWords(std::set<std::string, std::less<>> words,
                     std::string version)
      : words_(std::move(words)), version_(std::move(version)) {}

  bool Contains(std::string_view word) const { return words_.contains(word); }
  std::size_t size() const { return words_.size(); }
  const std::string& version() const { return version_; }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
  std::string version_;
};

struct AttackConfig {
  static constexpr std::size_t kDefaultK = 50;
  static constexpr double kDefaultSimThreshold = 0.8;

  AttackMode mode = AttackMode::kReplace;
  std::size_t k = kDefaultK;
  double sim_threshold = kDefaultSimThreshold;
  // Fraction of original tokens that may be perturbed; nullopt = unlimited.
  std::optional<double> max_perturb_ratio;
  // Total classifier calls per sentence; nullopt = unlimited.
  std::optional<std::uint64_t> query_budget;
  // Enables antonym filtering.
  bool sentiment_task = false;
  std::shared_ptr<const StopWords> stop_words = StopWords::Default();

  // Throws ConfigError.
  void Validate() const;

  // Maximum number of ops for an n-token sentence under max_perturb_ratio.
  std::optional<std::size_t> MaxOps(std::size_t original_tokens) const;
};

}  // namespace bae

#endif  // BAE_ATTACK_CONFIG_H_

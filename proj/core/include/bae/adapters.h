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

// Adapter config: an INI document selecting one implementation per backend
// plus attack defaults. Relative paths resolve against the config file.
//
//   [classifier]  kind = toy | bow_logreg | http
//                 fixture = toy.json            (toy)
//                 train = train.tsv             (bow_logreg; epochs, learning_rate, l2)
//                 url = http://host:port        (http; num_classes, timeout)
//                 model, checkpoint, device, num_filters, filter_sizes,
//                 dropout, hidden_units, fine_tune_epochs,
//                 fine_tune_learning_rate       (victim metadata, validated only)
//   [mlm]         kind = toy | corpus | http    (fixture / corpus / url)
//   [encoder]     kind = toy | bow | http
//   [pos]         kind = toy | lexicon | http   (fixture / path, suffix_fallback / url)
//   [antonyms]    kind = toy | file | none      (fixture / path)
//   [attack]      mode, k, sim_threshold, max_perturb, query_budget,
//                 sentiment_task, stopwords
//
// Every section except [attack] is required.

#ifndef BAE_ADAPTERS_H_
#define BAE_ADAPTERS_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "bae/attack_config.h"
#include "bae/backends.h"

namespace bae {

struct AdapterConfig {
  Backends backends;
  AttackConfig attack;
  // Whether [attack] set sentiment_task explicitly; otherwise the dataset
  // decides.
  bool sentiment_task_set = false;
  // Victim-model metadata from [classifier], keyed by field name.
  std::map<std::string, std::string> victim;
};

// Throws ConfigError with the dotted field path on any schema violation.
AdapterConfig LoadAdapterConfig(const std::filesystem::path& path);
AdapterConfig ParseAdapterConfig(std::string_view ini_text,
                                 const std::filesystem::path& base_dir);

}  // namespace bae

#endif  // BAE_ADAPTERS_H_

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

#include "bae/backends.h"

#include "bae/errors.h"

namespace bae {

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return "NOUN";
    case PosTag::kVerb:
      return "VERB";
    case PosTag::kAdj:
      return "ADJ";
    case PosTag::kAdv:
      return "ADV";
    case PosTag::kOther:
      return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (PosTag t : {PosTag::kNoun, PosTag::kVerb, PosTag::kAdj, PosTag::kAdv,
                   PosTag::kOther}) {
    if (PosTagName(t) == name) return t;
  }
  return std::nullopt;
}

void Backends::Validate() const {
  if (!classifier) throw ConfigError("classifier", "backend missing");
  if (!mlm) throw ConfigError("mlm", "backend missing");
  if (!encoder) throw ConfigError("encoder", "backend missing");
  if (!pos) throw ConfigError("pos", "backend missing");
  if (!antonyms) throw ConfigError("antonyms", "backend missing");
}

bool Backends::concurrency_safe() const {
  return classifier->concurrency_safe() && mlm->concurrency_safe() &&
         encoder->concurrency_safe() && pos->concurrency_safe();
}

ProbDist CountingClassifier::Predict(std::string_view text) const {
  ++queries_;
  return inner_.Predict(text);
}

}  // namespace bae

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

// Adapters for pretrained models served out of process (for example a
// transformers-based model server, see tools/serve_models.py). Every call is
// a JSON POST:
//
//   POST /predict     {"text": str}                 -> {"probs": [float]}
//   POST /mask        {"tokens": [str], "k": int}   -> {"predictions":
//                                                       [{"word": str, "score": float}]}
//   POST /similarity  {"a": str, "b": str}          -> {"similarity": float}
//   POST /tag         {"tokens": [str]}             -> {"tags": ["NOUN"|"VERB"|...]}
//
// The mask slot is always the literal "[MASK]" word; servers that split
// words into subwords must mask the whole word with one mask symbol and
// return single-token predictions only.

#ifndef BAE_HTTP_BACKENDS_H_
#define BAE_HTTP_BACKENDS_H_

#include <string>

#include "bae/backends.h"

namespace bae {

struct HttpEndpoint {
  // "http://host:port"
  std::string base_url;
  double timeout_seconds = 30.0;
};

class HttpClassifier : public ClassifierBackend {
 public:
  HttpClassifier(HttpEndpoint endpoint, int num_classes)
      : endpoint_(std::move(endpoint)), num_classes_(num_classes) {}
  ProbDist Predict(std::string_view text) const override;
  int num_classes() const override { return num_classes_; }

 private:
  HttpEndpoint endpoint_;
  int num_classes_;
};

class HttpMaskedLM : public MaskedLMBackend {
 public:
  explicit HttpMaskedLM(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::vector<ScoredWord> PredictMask(std::span<const std::string> tokens,
                                      std::size_t k) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpEncoder : public SentenceEncoderBackend {
 public:
  explicit HttpEncoder(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  double Similarity(std::string_view a, std::string_view b) const override;

 private:
  HttpEndpoint endpoint_;
};

class HttpPosTagger : public PosTaggerBackend {
 public:
  explicit HttpPosTagger(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::vector<PosTag> TagTokens(std::span<const std::string> tokens) const override;

 private:
  HttpEndpoint endpoint_;
};

}  // namespace bae

#endif  // BAE_HTTP_BACKENDS_H_

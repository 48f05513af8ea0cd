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

#ifndef BAE_ERRORS_H_
#define BAE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bae {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTextError : public Error {
 public:
  EmptyTextError() : Error("text contains no tokens") {}
};

class PositionResolutionError : public Error {
 public:
  explicit PositionResolutionError(std::size_t position)
      : Error("original position " + std::to_string(position) +
              " has no image in the sentence"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidPerturbationError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  using Error::Error;
};

// Schema violation in an adapter config or fixture. field() is the dotted
// path of the offending key, e.g. "classifier" or "attack.k".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& detail)
      : Error(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LabelRangeError : public Error {
 public:
  LabelRangeError(std::size_t line, int label, int num_classes)
      : Error("line " + std::to_string(line) + ": label " +
              std::to_string(label) + " outside [0, " +
              std::to_string(num_classes) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

class MismatchedCorporaError : public Error {
 public:
  using Error::Error;
};

class IncompleteAnnotationsError : public Error {
 public:
  explicit IncompleteAnnotationsError(std::vector<std::string> missing)
      : Error(Describe(missing)), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing_items() const { return missing_; }

 private:
  static std::string Describe(const std::vector<std::string>& missing) {
    std::string msg = "annotations missing for items:";
    for (const auto& id : missing) msg += " " + id;
    return msg;
  }
  std::vector<std::string> missing_;
};

}  // namespace bae

#endif  // BAE_ERRORS_H_

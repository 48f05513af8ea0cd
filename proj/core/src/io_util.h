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

#ifndef BAE_SRC_IO_UTIL_H_
#define BAE_SRC_IO_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace bae::internal {

// Throws Error when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);
// Writes atomically enough for our purposes: temp file then rename.
void WriteFile(const std::filesystem::path& path, std::string_view content);

std::string Trim(std::string_view s);
std::string AsciiLower(std::string_view s);

}  // namespace bae::internal

#endif  // BAE_SRC_IO_UTIL_H_

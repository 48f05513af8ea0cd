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

#ifndef BAE_TESTS_SUPPORT_TEST_PATHS_H_
#define BAE_TESTS_SUPPORT_TEST_PATHS_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace bae::test {

// BAE_TEST_DATA_DIR is injected by the build.
inline std::filesystem::path DataDir() { return BAE_TEST_DATA_DIR; }
inline std::filesystem::path DataPath(const std::string& name) { return DataDir() / name; }

inline std::string Slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("bae_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace bae::test

#endif  // BAE_TESTS_SUPPORT_TEST_PATHS_H_

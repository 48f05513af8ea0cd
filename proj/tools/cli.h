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

// The `bae` command line, kept in a library so tests can drive it without
// spawning processes.

#ifndef BAE_TOOLS_CLI_H_
#define BAE_TOOLS_CLI_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bae::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Looks up an environment variable; injectable for tests.
using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;
EnvLookup ProcessEnv();

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const EnvLookup& env = ProcessEnv());

// Parses "10,20,30" or an arithmetic progression "10,20,...,100" of
// percentages into ascending ratios. Throws std::invalid_argument.
std::vector<double> ParseCaps(std::string_view text);

}  // namespace bae::cli

#endif  // BAE_TOOLS_CLI_H_

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

#ifndef BAE_TESTS_SUPPORT_ACCEPTANCE_H_
#define BAE_TESTS_SUPPORT_ACCEPTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bae/attack_config.h"
#include "bae/core.h"
#include "bae/toy_backends.h"

namespace bae::testing {

struct CheckResult {
  bool pass = false;
  // One line: what was checked and, on failure, the first counterexample.
  std::string detail;
  double seconds = 0.0;
};

// Seeds used by the randomized checks; each seed is one toy world.
struct SeedRange {
  std::uint64_t first = 1;
  std::uint64_t count = 150;
};

// Empty when `result` obeys every filter rule; otherwise names the broken rule.
std::string FilterViolation(const ToyFixture& fixture, const AttackConfig& config,
                            const AttackResult& result);

// Empty when the structural invariants hold for `result` under `mode`.
std::string StructuralViolation(AttackMode mode, const AttackResult& result);

CheckResult CheckOracleEquivalence(SeedRange seeds);
CheckResult CheckFilterCompliance(SeedRange seeds);
CheckResult CheckMonotoneBudget(SeedRange seeds);
CheckResult CheckAblationIdentity(SeedRange seeds);
CheckResult CheckStructuralInvariants(SeedRange seeds);
CheckResult CheckDeterminism(SeedRange seeds);

struct DirectionalOptions {
  std::uint64_t seed = 2026;
  std::size_t train_size = 2000;
  std::size_t test_size = 200;
  int jobs = 4;
  // Optional masked-LM server; the corpus bigram model is used otherwise.
  std::string mlm_url;
};

CheckResult CheckDirectional(const DirectionalOptions& options);

// Runs the CLI on the checked-in toy corpus and compares with golden files.
CheckResult CheckReportFidelity(const std::string& data_dir);

}  // namespace bae::testing

#endif  // BAE_TESTS_SUPPORT_ACCEPTANCE_H_

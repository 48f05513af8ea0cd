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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails. Set BAE_MLM_URL to use a served masked LM for the
// directional check.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "acceptance.h"

int main(int argc, char** argv) {
  using namespace bae::testing;
  const std::string data_dir = argc > 1 ? argv[1] : BAE_TEST_DATA_DIR;
  constexpr SeedRange kSeeds{1, 150};

  DirectionalOptions directional;
  directional.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* url = std::getenv("BAE_MLM_URL")) directional.mlm_url = url;

  struct Criterion {
    const char* name;
    CheckResult result;
  };
  const Criterion criteria[] = {
      {"oracle equivalence", CheckOracleEquivalence(kSeeds)},
      {"filter compliance", CheckFilterCompliance(kSeeds)},
      {"monotone budget", CheckMonotoneBudget(kSeeds)},
      {"ablation identity", CheckAblationIdentity(kSeeds)},
      {"structural invariants", CheckStructuralInvariants(kSeeds)},
      {"determinism", CheckDeterminism(kSeeds)},
      {"directional reproduction", CheckDirectional(directional)},
      {"report fidelity", CheckReportFidelity(data_dir)},
  };
  int failures = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    failures += !c.result.pass;
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", c.result.pass ? "PASS" : "FAIL", n, c.name,
                c.result.detail.c_str(), c.result.seconds);
  }
  return failures == 0 ? 0 : 1;
}

// Copyright 2026 The hybridqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace hqc::harness {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    std::string relation = "<";  // measured <relation> bound
    bool passed = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

// Suites: identities, dynamics, ensembles, operators.
std::vector<std::string> verify_suite_names();
VerifyReport run_verify(const std::string& suite);

std::string report_json(const std::vector<VerifyReport>& reports);

}  // namespace hqc::harness

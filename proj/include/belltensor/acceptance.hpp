// Copyright 2026 The belltensor Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace belltensor {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    /// Multiplies every tolerance; values below 1 tighten the checks.
    double tolerance_scale = 1.0;
    std::uint64_t seed = 0;
    /// Criterion ids to run; empty runs all.
    std::vector<int> only;
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions &options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options = {});

nlohmann::json report_json(const std::vector<CriterionResult> &results);

/// "PASS  3  name  (1.23 s)  detail"
std::string format_result_line(const CriterionResult &r);

}  // namespace belltensor

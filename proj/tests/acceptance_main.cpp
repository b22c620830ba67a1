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

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "belltensor/acceptance.hpp"

int main(int argc, char **argv) {
    belltensor::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--tolerance-scale" && i + 1 < argc) {
            options.tolerance_scale = std::stod(argv[++i]);
        } else if (arg == "--only" && i + 1 < argc) {
            options.only.push_back(std::stoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--tolerance-scale S] [--only ID]...\n";
            return 64;
        }
    }
    int failed = 0;
    for (int id = 1; id <= belltensor::kCriterionCount; ++id) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
            continue;
        }
        const auto r = belltensor::run_criterion(id, options);
        failed += !r.passed;
        std::cout << belltensor::format_result_line(r) << std::endl;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " failing criteria" << std::endl;
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}

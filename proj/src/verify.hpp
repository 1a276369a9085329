// Copyright 2026 The kfpq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

// The acceptance suite: one self-contained check per numbered criterion.
namespace kfpq::verify {

inline constexpr int kCriteria = 10;

struct Options {
    std::uint64_t seed = 1;
    int galerkin_dims = 64; // norm and decay curves
};

struct Metric {
    std::string key;
    double value;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool checks_pass = false;
    double runtime_limit_s = 0.0;
    double elapsed_s = 0.0; // wall clock, not reproducible
    std::vector<Metric> metrics;
    std::string error; // set when a check threw

    bool passed() const { return checks_pass && error.empty() && elapsed_s < runtime_limit_s; }
    // "key=value;..." with 17 significant digits
    std::string metrics_text() const;
};

CriterionResult run_criterion(int id, const Options &opt);
std::vector<CriterionResult> run_all(const Options &opt);

} // namespace kfpq::verify

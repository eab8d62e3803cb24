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

#include <filesystem>

#include "hybridqc/harness/results.hpp"

namespace hqc::harness {

// Samples density A and transports it through the observation times.
ResultRecord run_simulate(const ScenarioConfig& config);

// Runs densities A and B with independent sub-seeds and records their trace
// distance at every observation time.
ResultRecord run_compare(const ScenarioConfig& config);

// Samples density A, transports it to `time` and writes the particle table.
void run_dump_cloud(const ScenarioConfig& config, double time, const std::filesystem::path& file);

// Grid used for the estimator identity when the scenario has none: the first
// position coordinate over mean +- 6 widths in 24 bins.
ClassicalGrid default_grid(const ScenarioConfig& config);

// Stream indices for the two clouds of a comparison.
inline constexpr std::uint64_t kStreamA = 0xA;
inline constexpr std::uint64_t kStreamB = 0xB;

}  // namespace hqc::harness

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
#include <optional>
#include <string>
#include <vector>

#include "hybridqc/harness/config.hpp"

namespace hqc::harness {

struct CellRecord {
    std::size_t index = 0;
    std::vector<double> center;
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t count = 0;
    double mass = 0.0;
    CMatrix matrix;
};

// Positivity and normalization of one emitted operator.
struct OperatorCheck {
    double min_eigenvalue = 0.0;
    double trace_error = 0.0;  // |tr - expected|
    double hermiticity = 0.0;
};

struct ObservationRecord {
    double time = 0.0;
    CMatrix rho;                   // reduced state of cloud A
    std::optional<CMatrix> rho_b;  // compare only
    // compare: distance between A and B; simulate: distance to the reference
    // state when one is available.
    std::optional<double> trace_distance;
    std::optional<CMatrix> reference;
    double error_band = 0.0;
    double energy_drift = 0.0;  // max over particles, relative to t = 0
    double norm_drift = 0.0;
    std::size_t steps = 0;  // integrator steps per particle since t = 0
    double estimator_identity = 0.0;  // max |sum(cells) + remainder - rho| entry
    OperatorCheck rho_check;
    std::optional<OperatorCheck> rho_b_check;
    double worst_cell_check = 0.0;  // max violation over cells (negative eigenvalue or trace)
    std::vector<CellRecord> cells;  // configured grid only
    std::size_t remainder_count = 0;
    double captured_weight = 0.0;  // total weight inside the grid
};

struct ResultRecord {
    std::string verb;  // simulate | compare
    ScenarioConfig scenario;
    std::string reference_kind = "none";  // none | unitary | frozen_classical
    std::optional<double> initial_distance;
    std::vector<ObservationRecord> observations;
    double wall_seconds = 0.0;  // kept out of result.json
};

OperatorCheck check_operator(const CMatrix& m, double expected_trace);

// Deterministic JSON text of everything except wall-clock time.
std::string result_json(const ResultRecord& record);
std::string timeseries_csv(const ResultRecord& record);

// Writes result.json, timeseries.csv and timing.json into dir.
void write_results(const ResultRecord& record, const std::filesystem::path& dir);

// One row per particle: weight, q..., p..., x..., y...
void write_cloud_csv(const ParticleCloud& cloud, const std::filesystem::path& file);

}  // namespace hqc::harness

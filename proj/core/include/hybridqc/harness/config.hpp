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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridqc/ensembles.hpp"
#include "hybridqc/statistical_operators.hpp"

namespace hqc::harness {

struct ClassicalHamiltonianConfig {
    std::string kind = "harmonic";  // harmonic | free | polynomial | zero
    double mass = 1.0;
    double frequency = 1.0;
    std::vector<double> q_coefficients;
    std::vector<double> p_coefficients;
};

struct InteractionConfig {
    std::string kind = "zero";  // zero | linear_q
    double coupling = 0.0;
    Eigen::Index axis = 0;
    CMatrix op;
};

struct ClassicalFactorConfig {
    std::string kind = "gaussian";  // gaussian | point_mass
    std::vector<double> q0;
    std::vector<double> p0;
    std::vector<double> sigma_q;
    std::vector<double> sigma_p;
};

struct QuantumFactorConfig {
    std::string kind = "haar";  // haar | point_mixture | quadratic_form
    std::vector<CVector> states;
    std::vector<double> weights;
    // quadratic_form: f(q, p) = base + tanh(q[slope_axis]) * slope
    CMatrix base;
    CMatrix slope;
    Eigen::Index slope_axis = 0;
};

struct DensityConfig {
    ClassicalFactorConfig classical;
    QuantumFactorConfig quantum;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    std::size_t particles = 1000;

    Eigen::Index quantum_dim = 2;
    Eigen::Index classical_dof = 1;
    double hbar = 1.0;

    ClassicalHamiltonianConfig classical_hamiltonian;
    CMatrix quantum_hamiltonian;
    InteractionConfig interaction;

    double dt = 1e-3;
    double horizon = 1.0;
    std::vector<double> observation_times;

    DensityConfig density_a;
    std::optional<DensityConfig> density_b;
    std::string pairing = "none";  // none | explicit | same_moment

    std::optional<std::vector<GridAxis>> grid;
    std::string output_directory = "out";
};

// Parses and validates; throws ConfigInvalid naming the offending field.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config.
std::string emit_config(const ScenarioConfig& config);

// The same document rendered as JSON, for result files.
std::string config_json(const ScenarioConfig& config);

void validate(const ScenarioConfig& config);

HybridHamiltonian build_hamiltonian(const ScenarioConfig& config);
DensitySpec build_density(const ScenarioConfig& config, const DensityConfig& density);

// Density A and, for comparisons, density B (explicit or same-moment pairing).
std::pair<DensitySpec, std::optional<DensitySpec>> build_densities(const ScenarioConfig& config);

// Field-by-field comparison with a tolerance on numeric entries.
bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b, double tolerance = 1e-15);

}  // namespace hqc::harness

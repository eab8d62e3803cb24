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

#include "hybridqc/harness/scenarios.hpp"

namespace hqc::harness {

namespace {

CMatrix pauli_x() { return HermitianOperator::pauli_x().matrix(); }
CMatrix half_pauli_z() { return (HermitianOperator::pauli_z() * 0.5).matrix(); }

std::vector<double> grid_times(double horizon, double step) {
    std::vector<double> times;
    const auto count = static_cast<int>(std::lround(horizon / step));
    for (int i = 0; i <= count; ++i) times.push_back(horizon * i / count);
    return times;
}

ClassicalFactorConfig gaussian(double q0, double p0, double sigma_q, double sigma_p) {
    ClassicalFactorConfig c;
    c.kind = "gaussian";
    c.q0 = {q0};
    c.p0 = {p0};
    c.sigma_q = {sigma_q};
    c.sigma_p = {sigma_p};
    return c;
}

ScenarioConfig oscillator_base(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.seed = 20260101;
    cfg.particles = 10000;
    cfg.quantum_dim = 2;
    cfg.classical_dof = 1;
    cfg.hbar = 1.0;
    cfg.classical_hamiltonian.kind = "harmonic";
    cfg.classical_hamiltonian.mass = 1.0;
    cfg.classical_hamiltonian.frequency = 1.0;
    cfg.quantum_hamiltonian = half_pauli_z();
    cfg.dt = 1e-3;
    cfg.horizon = 10.0;
    cfg.density_a.classical = gaussian(1.0, 0.0, 0.2, 0.2);
    cfg.density_a.quantum.kind = "haar";
    cfg.grid = std::vector<GridAxis>{{GridCoordinate::Position, 0, -2.0, 2.0, 20}};
    cfg.output_directory = "out/" + name;
    return cfg;
}

ScenarioConfig decoupled_qubit() {
    ScenarioConfig cfg = oscillator_base("decoupled_qubit");
    cfg.interaction.kind = "zero";
    cfg.observation_times = {0.0, 1.0, 5.0, 10.0};
    return cfg;
}

ScenarioConfig frozen_classical() {
    ScenarioConfig cfg = oscillator_base("frozen_classical");
    cfg.classical_hamiltonian.kind = "zero";
    cfg.interaction.kind = "linear_q";
    cfg.interaction.coupling = 0.5;
    cfg.interaction.axis = 0;
    cfg.interaction.op = pauli_x();
    cfg.density_a.quantum.kind = "point_mixture";
    CVector up = CVector::Zero(2);
    up[0] = 1.0;
    cfg.density_a.quantum.states = {up};
    cfg.density_a.quantum.weights = {1.0};
    cfg.observation_times = {0.0, 1.0, 5.0, 10.0};
    cfg.grid = std::vector<GridAxis>{{GridCoordinate::Position, 0, 0.2, 1.8, 32}};
    return cfg;
}

ScenarioConfig qubit_oscillator() {
    ScenarioConfig cfg = oscillator_base("qubit_oscillator");
    cfg.interaction.kind = "linear_q";
    cfg.interaction.coupling = 0.5;
    cfg.interaction.axis = 0;
    cfg.interaction.op = pauli_x();
    cfg.observation_times = grid_times(10.0, 0.5);
    return cfg;
}

ScenarioConfig qubit_oscillator_compare() {
    ScenarioConfig cfg = qubit_oscillator();
    cfg.name = "qubit_oscillator_compare";
    cfg.output_directory = "out/qubit_oscillator_compare";
    cfg.pairing = "same_moment";
    cfg.observation_times = grid_times(10.0, 0.1);
    cfg.grid.reset();
    return cfg;
}

}  // namespace

ScenarioConfig bundled_scenario(const std::string& name) {
    if (name == "decoupled_qubit") return decoupled_qubit();
    if (name == "frozen_classical") return frozen_classical();
    if (name == "qubit_oscillator") return qubit_oscillator();
    if (name == "qubit_oscillator_compare") return qubit_oscillator_compare();
    throw InvalidArgument("unknown bundled scenario: " + name);
}

std::vector<std::string> bundled_scenario_names() {
    return {"decoupled_qubit", "frozen_classical", "qubit_oscillator", "qubit_oscillator_compare"};
}

}  // namespace hqc::harness

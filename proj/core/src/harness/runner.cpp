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

#include "hybridqc/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hybridqc/parallel.hpp"
#include "hybridqc/random.hpp"

namespace hqc::harness {

namespace {

constexpr std::size_t kOracleQuadraturePoints = 48;
constexpr double kMaxOracleNodes = 1e5;

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> particle_energies(const ParticleCloud& cloud, const HybridHamiltonian& h) {
    std::vector<double> energies(cloud.size());
    parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
        Propagator prop(h);
        for (std::size_t i = begin; i < end; ++i) energies[i] = prop.energy(PhaseState::of(cloud[i].point));
    });
    return energies;
}

struct Drift {
    double energy = 0.0;
    double norm = 0.0;
};

Drift drift_since_start(const ParticleCloud& cloud, const HybridHamiltonian& h,
                        const std::vector<double>& initial) {
    const std::vector<double> now = particle_energies(cloud, h);
    Drift d;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        d.energy = std::max(d.energy, std::abs(now[i] - initial[i]) / std::max(1.0, std::abs(initial[i])));
        d.norm = std::max(d.norm, std::abs(cloud[i].point.quantum.norm() - 1.0));
    }
    return d;
}

struct Reference {
    std::string kind = "none";
    std::function<CMatrix(double)> state;
};

Reference make_reference(const ScenarioConfig& cfg, const DensitySpec& spec, const HybridHamiltonian& h) {
    Reference ref;
    const auto& quantum = cfg.density_a.quantum;
    if (!h.has_interaction() && quantum.kind != "quadratic_form") {
        CMatrix rho0 = CMatrix::Zero(cfg.quantum_dim, cfg.quantum_dim);
        if (quantum.kind == "haar") {
            rho0 = QuantumDensityMatrix::maximally_mixed(cfg.quantum_dim).matrix();
        } else {
            for (std::size_t i = 0; i < quantum.states.size(); ++i) {
                rho0 += quantum.weights[i] * quantum.states[i] * quantum.states[i].adjoint();
            }
        }
        const QuantumDensityMatrix initial(rho0);
        ref.kind = "unitary";
        ref.state = [initial, &h](double t) {
            return unitary_oracle(initial, h.quantum(), t, h.hbar()).matrix();
        };
        return ref;
    }
    double axes = static_cast<double>(cfg.classical_dof);
    if (quantum.kind == "quadratic_form") axes *= 2.0;
    if (cfg.density_a.classical.kind == "gaussian" &&
        std::pow(static_cast<double>(kOracleQuadraturePoints), axes) > kMaxOracleNodes) {
        return ref;
    }
    try {
        frozen_classical_oracle(spec, h, 0.0, kOracleQuadraturePoints);
    } catch (const UnsupportedHamiltonian&) {
        return ref;
    }
    ref.kind = "frozen_classical";
    ref.state = [&spec, &h](double t) {
        return frozen_classical_oracle(spec, h, t, kOracleQuadraturePoints).matrix();
    };
    return ref;
}

double max_abs_entry(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Fills rho, the identity deviation, operator checks and (optionally) cells.
void record_estimates(ObservationRecord& obs, const ParticleCloud& cloud, const ClassicalGrid& grid,
                      bool emit_cells) {
    obs.rho = estimate_quantum_state(cloud).matrix();
    obs.rho_check = check_operator(obs.rho, 1.0);
    if (cloud.classical_dof() == 0) return;
    const HybridStatOp statop = estimate_hybrid_statop(cloud, grid);
    CMatrix sum = statop.remainder;
    for (std::size_t c = 0; c < statop.cells.size(); ++c) {
        sum += statop.cells[c];
        const OperatorCheck check = check_operator(statop.cells[c], statop.cell_mass(c));
        obs.worst_cell_check =
            std::max({obs.worst_cell_check, -check.min_eigenvalue, check.hermiticity});
        if (emit_cells && statop.counts[c] > 0) {
            CellRecord cell{c, grid.cell_center(c), {}, {}, statop.counts[c], statop.cell_mass(c), statop.cells[c]};
            const auto idx = grid.cell_indices(c);
            for (std::size_t a = 0; a < idx.size(); ++a) {
                const GridAxis& axis = grid.axes()[a];
                cell.lower.push_back(axis.lower + axis.width() * static_cast<double>(idx[a]));
                cell.upper.push_back(axis.lower + axis.width() * static_cast<double>(idx[a] + 1));
            }
            obs.cells.push_back(std::move(cell));
        }
    }
    obs.estimator_identity = max_abs_entry(sum - obs.rho);
    obs.remainder_count = statop.remainder_count;
    obs.captured_weight = statop.total_weight_captured;
}

ClassicalGrid grid_for(const ScenarioConfig& cfg) {
    return cfg.grid ? ClassicalGrid(*cfg.grid) : default_grid(cfg);
}

}  // namespace

ClassicalGrid default_grid(const ScenarioConfig& cfg) {
    const auto& c = cfg.density_a.classical;
    const double center = c.q0.empty() ? 0.0 : c.q0.front();
    const double width = c.kind == "gaussian" && !c.sigma_q.empty() ? c.sigma_q.front() : 1.0;
    return ClassicalGrid({{GridCoordinate::Position, 0, center - 6.0 * width, center + 6.0 * width, 24}});
}

ResultRecord run_simulate(const ScenarioConfig& cfg) {
    validate(cfg);
    const Clock clock;
    const HybridHamiltonian h = build_hamiltonian(cfg);
    const DensitySpec spec = build_density(cfg, cfg.density_a);
    const ClassicalGrid grid = grid_for(cfg);
    const Reference ref = make_reference(cfg, spec, h);

    ResultRecord record;
    record.verb = "simulate";
    record.scenario = cfg;
    record.reference_kind = ref.kind;

    ParticleCloud cloud = sample(spec, cfg.particles, cfg.seed);
    const std::vector<double> e0 = particle_energies(cloud, h);
    const double band = 3.0 / std::sqrt(static_cast<double>(cfg.particles));
    std::size_t steps = 0;
    for (double t : cfg.observation_times) {
        if (t > cloud.time()) {
            TransportResult moved = transport_with_diagnostics(cloud, h, t - cloud.time(), cfg.dt);
            steps += moved.drift.steps;
            cloud = std::move(moved.cloud);
        }
        ObservationRecord obs;
        obs.time = t;
        obs.steps = steps;
        obs.error_band = band;
        const Drift drift = drift_since_start(cloud, h, e0);
        obs.energy_drift = drift.energy;
        obs.norm_drift = drift.norm;
        record_estimates(obs, cloud, grid, cfg.grid.has_value());
        if (ref.state) {
            obs.reference = ref.state(t);
            obs.trace_distance = trace_distance(QuantumDensityMatrix(obs.rho), QuantumDensityMatrix(*obs.reference));
        }
        record.observations.push_back(std::move(obs));
    }
    record.wall_seconds = clock.seconds();
    return record;
}

ResultRecord run_compare(const ScenarioConfig& cfg) {
    validate(cfg);
    if (cfg.pairing == "none") throw ConfigInvalid("compare.pairing", "compare needs a second density");
    const Clock clock;
    const HybridHamiltonian h = build_hamiltonian(cfg);
    auto [spec_a, spec_b] = build_densities(cfg);
    const ClassicalGrid grid = grid_for(cfg);

    ResultRecord record;
    record.verb = "compare";
    record.scenario = cfg;

    ParticleCloud a = sample(spec_a, cfg.particles, derive_seed(cfg.seed, kStreamA));
    ParticleCloud b = sample(*spec_b, cfg.particles, derive_seed(cfg.seed, kStreamB));
    record.initial_distance = trace_distance(estimate_quantum_state(a), estimate_quantum_state(b));
    const std::vector<double> e0_a = particle_energies(a, h);
    const std::vector<double> e0_b = particle_energies(b, h);
    const double band = 6.0 / std::sqrt(static_cast<double>(cfg.particles));
    std::size_t steps = 0;
    for (double t : cfg.observation_times) {
        if (t > a.time()) {
            const double span = t - a.time();
            TransportResult moved_a = transport_with_diagnostics(a, h, span, cfg.dt);
            TransportResult moved_b = transport_with_diagnostics(b, h, span, cfg.dt);
            steps += moved_a.drift.steps;
            a = std::move(moved_a.cloud);
            b = std::move(moved_b.cloud);
        }
        ObservationRecord obs;
        obs.time = t;
        obs.steps = steps;
        obs.error_band = band;
        const Drift da = drift_since_start(a, h, e0_a);
        const Drift db = drift_since_start(b, h, e0_b);
        obs.energy_drift = std::max(da.energy, db.energy);
        obs.norm_drift = std::max(da.norm, db.norm);
        record_estimates(obs, a, grid, cfg.grid.has_value());
        ObservationRecord side;
        record_estimates(side, b, grid, false);
        obs.rho_b = side.rho;
        obs.rho_b_check = side.rho_check;
        obs.estimator_identity = std::max(obs.estimator_identity, side.estimator_identity);
        obs.worst_cell_check = std::max(obs.worst_cell_check, side.worst_cell_check);
        obs.trace_distance = trace_distance(QuantumDensityMatrix(obs.rho), QuantumDensityMatrix(*obs.rho_b));
        record.observations.push_back(std::move(obs));
    }
    record.wall_seconds = clock.seconds();
    return record;
}

void run_dump_cloud(const ScenarioConfig& cfg, double time, const std::filesystem::path& file) {
    validate(cfg);
    if (time < 0.0) throw ConfigInvalid("time", "must be non-negative");
    const HybridHamiltonian h = build_hamiltonian(cfg);
    const DensitySpec spec = build_density(cfg, cfg.density_a);
    ParticleCloud cloud = sample(spec, cfg.particles, cfg.seed);
    if (time > 0.0) cloud = transport(cloud, h, time, cfg.dt);
    write_cloud_csv(cloud, file);
}

}  // namespace hqc::harness

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

#include "hybridqc/harness/verify.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hybridqc/harness/runner.hpp"
#include "hybridqc/harness/scenarios.hpp"
#include "hybridqc/random.hpp"

namespace hqc::harness {

namespace {

constexpr std::uint64_t kVerifySeed = 7771;

CheckResult below(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, "<", measured < bound};
}

CheckResult at_most(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, "<=", measured <= bound};
}

HermitianOperator random_hermitian(Eigen::Index d, ParticleRng& rng) {
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    return HermitianOperator(CMatrix(0.5 * (m + m.adjoint())));
}

Complex commutator_expectation(const HermitianOperator& a, const HermitianOperator& b, const CVector& c) {
    const CMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return c.dot(comm * c);
}

// Identities --------------------------------------------------------------------

std::vector<CheckResult> identities() {
    std::vector<CheckResult> out;
    double chart = 0.0;
    double bracket = 0.0;
    double gradient = 0.0;
    std::uint64_t stream = 0;
    for (Eigen::Index d : {2, 3, 4}) {
        for (int draw = 0; draw < 100; ++draw) {
            ParticleRng rng(kVerifySeed, stream++);
            const CVector c = haar_state(d, rng);
            const QuantumPoint pt = to_coordinates(c);
            chart = std::max(chart, (from_coordinates(pt) - c).cwiseAbs().maxCoeff());

            const HermitianOperator a = random_hermitian(d, rng);
            const HermitianOperator b = random_hermitian(d, rng);
            const double hbar = 0.5 + rng.uniform();
            // {A, B} = <[A, B]> / (i hbar)
            const Complex expected = commutator_expectation(a, b, c) / Complex(0.0, hbar);
            bracket = std::max(bracket, std::abs(quantum_poisson(a, b, pt, hbar) - expected));

            const CoordinateGradient g = expectation_gradient(a, pt);
            const double step = 1e-6;
            for (Eigen::Index j = 0; j < d; ++j) {
                RVector xp = pt.x(), xm = pt.x();
                xp[j] += step;
                xm[j] -= step;
                auto value = [&](const RVector& x, const RVector& y) {
                    const CVector v = (x + Complex(0.0, 1.0) * y) / std::sqrt(2.0);
                    return v.dot(a.matrix() * v).real();
                };
                const double fd = (value(xp, pt.y()) - value(xm, pt.y())) / (2.0 * step);
                gradient = std::max(gradient, std::abs(fd - g.dx[j]));
            }
        }
    }
    out.push_back(below("chart_round_trip", chart, 1e-12));
    out.push_back(below("bracket_commutator_identity", bracket, 1e-9));
    out.push_back(below("expectation_gradient_vs_finite_difference", gradient, 1e-7));
    return out;
}

// Dynamics ------------------------------------------------------------------------

std::vector<CheckResult> dynamics() {
    std::vector<CheckResult> out;
    {
        const ScenarioConfig cfg = bundled_scenario("decoupled_qubit");
        const HybridHamiltonian h = build_hamiltonian(cfg);
        ParticleRng rng(kVerifySeed, 1);
        const CVector c0 = haar_state(2, rng);
        RVector q(1), p(1);
        q << 0.8;
        p << -0.3;
        const HybridPoint z0{ClassicalPoint(q, p), to_coordinates(c0)};
        const Trajectory traj = integrate(h, z0, 10.0, 1e-3, 1000000);
        const CVector exact = unitary_propagator(h.quantum(), 10.0, h.hbar()) * c0;
        const CVector got = from_coordinates(traj.points.back().quantum);
        out.push_back(below("schrodinger_equivalence_fidelity_error", 1.0 - std::norm(exact.dot(got)), 1e-8));
    }
    for (const char* name : {"decoupled_qubit", "frozen_classical", "qubit_oscillator"}) {
        ScenarioConfig cfg = bundled_scenario(name);
        cfg.particles = 8;
        const HybridHamiltonian h = build_hamiltonian(cfg);
        const ParticleCloud cloud = sample(build_density(cfg, cfg.density_a), cfg.particles, cfg.seed);
        const TransportResult moved = transport_with_diagnostics(cloud, h, 10.0, 1e-3);
        double norm = 0.0;
        for (const auto& particle : moved.cloud) norm = std::max(norm, std::abs(particle.point.quantum.norm() - 1.0));
        out.push_back(below(std::string("energy_drift_") + name, moved.drift.energy, 1e-7));
        out.push_back(below(std::string("norm_drift_") + name, norm, 1e-9));
    }
    {
        const ScenarioConfig cfg = bundled_scenario("qubit_oscillator");
        const HybridHamiltonian h = build_hamiltonian(cfg);
        const ParticleCloud cloud = sample(build_density(cfg, cfg.density_a), 4, cfg.seed);
        const ParticleCloud back = transport(transport(cloud, h, 3.0, 1e-3), h, -3.0, 1e-3);
        double err = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const PhaseState a = PhaseState::of(cloud[i].point);
            const PhaseState b = PhaseState::of(back[i].point);
            err = std::max({err, (a.q - b.q).cwiseAbs().maxCoeff(), (a.p - b.p).cwiseAbs().maxCoeff(),
                            (a.c - b.c).cwiseAbs().maxCoeff()});
        }
        out.push_back(below("time_reversal_round_trip", err, 1e-8));
    }
    return out;
}

// Ensembles -------------------------------------------------------------------------

std::vector<CheckResult> ensembles() {
    std::vector<CheckResult> out;
    RVector zero = RVector::Zero(1), one = RVector::Ones(1);
    const GaussianFactor gaussian{zero, zero, one, one};
    for (Eigen::Index d : {2, 3}) {
        const std::size_t n = 10000;
        const ParticleCloud cloud = sample(DensitySpec(gaussian, HaarUniform{d}), n, kVerifySeed);
        const CMatrix dev = estimate_quantum_state(cloud).matrix() - QuantumDensityMatrix::maximally_mixed(d).matrix();
        out.push_back(at_most("haar_first_moment_d" + std::to_string(d), operator_norm(dev),
                              3.0 / std::sqrt(static_cast<double>(n))));
    }
    const ScenarioConfig cfg = bundled_scenario("qubit_oscillator");
    const HybridHamiltonian h = build_hamiltonian(cfg);
    const DensitySpec spec = build_density(cfg, cfg.density_a);
    const ParticleCloud cloud = sample(spec, 200, cfg.seed);
    const ParticleCloud moved = transport(cloud, h, 2.0, cfg.dt);
    out.push_back(below("weight_conservation", std::abs(moved.total_weight() - 1.0), 1e-9));

    double pullback = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double initial = spec.evaluate(cloud[i].point);
        const double pulled = pullback_density(spec, h, moved[i].point, 2.0, cfg.dt);
        pullback = std::max(pullback, std::abs(pulled - initial) / std::max(1.0, initial));
    }
    out.push_back(below("pullback_transport_consistency", pullback, 1e-6));

    const ParticleCloud again = sample(spec, 200, cfg.seed);
    double same = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const PhaseState a = PhaseState::of(cloud[i].point);
        const PhaseState b = PhaseState::of(again[i].point);
        same = std::max({same, (a.q - b.q).cwiseAbs().maxCoeff(), (a.c - b.c).cwiseAbs().maxCoeff()});
    }
    out.push_back(at_most("seeded_determinism", same, 0.0));

    CMatrix base = CMatrix::Identity(2, 2);
    base(0, 0) = 1.5;
    base(1, 1) = 0.5;
    const DensitySpec quad(gaussian, QuadraticForm{2, [base](const ClassicalPoint&) { return HermitianOperator(base); }});
    out.push_back(below("quadraticity_at_t0",
                        quadraticity_residual(quad, h, ClassicalPoint(zero, zero), 0.0, 64, kVerifySeed), 1e-8));
    return out;
}

// Operators -----------------------------------------------------------------------

std::vector<CheckResult> operators() {
    std::vector<CheckResult> out;
    ScenarioConfig cfg = bundled_scenario("qubit_oscillator");
    cfg.particles = 2000;
    cfg.observation_times = {0.0, 1.0};
    const ResultRecord record = run_simulate(cfg);
    double identity = 0.0, negativity = 0.0, trace = 0.0, cells = 0.0;
    for (const auto& o : record.observations) {
        identity = std::max(identity, o.estimator_identity);
        negativity = std::max(negativity, -o.rho_check.min_eigenvalue);
        trace = std::max(trace, o.rho_check.trace_error);
        cells = std::max(cells, o.worst_cell_check);
    }
    out.push_back(below("estimator_identity_cells_plus_remainder", identity, 1e-12));
    out.push_back(below("reduced_state_negativity", negativity, kPositivityTolerance));
    out.push_back(below("reduced_state_trace_error", trace, kTraceTolerance));
    out.push_back(below("cell_operator_violation", cells, kPositivityTolerance));

    const HybridHamiltonian h = build_hamiltonian(cfg);
    const ParticleCloud cloud = sample(build_density(cfg, cfg.density_a), 2000, cfg.seed);
    const CMatrix rhs = eq19_rhs(cloud, h);
    out.push_back(below("reduced_state_derivative_trace", std::abs(rhs.trace()), 1e-12));
    out.push_back(below("reduced_state_derivative_hermiticity", hermiticity_deviation(rhs), 1e-12));

    const ScenarioConfig decoupled = bundled_scenario("decoupled_qubit");
    const QuantumDensityMatrix rho0 = QuantumDensityMatrix::maximally_mixed(2);
    const HermitianOperator hq = build_hamiltonian(decoupled).quantum();
    out.push_back(below("unitary_oracle_preserves_mixed_state",
                        trace_distance(unitary_oracle(rho0, hq, 3.0), rho0), 1e-12));
    return out;
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> verify_suite_names() { return {"identities", "dynamics", "ensembles", "operators"}; }

VerifyReport run_verify(const std::string& suite) {
    VerifyReport report{suite, {}};
    auto guarded = [&](auto fn) {
        try {
            report.checks = fn();
        } catch (const std::exception& e) {
            report.checks.push_back({"error: " + std::string(e.what()), 1.0, 0.0, "==", false});
        }
    };
    if (suite == "identities") {
        guarded(identities);
    } else if (suite == "dynamics") {
        guarded(dynamics);
    } else if (suite == "ensembles") {
        guarded(ensembles);
    } else if (suite == "operators") {
        guarded(operators);
    } else {
        report.checks.push_back({"unknown suite: " + suite, 1.0, 0.0, "==", false});
    }
    return report;
}

std::string report_json(const std::vector<VerifyReport>& reports) {
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"measured", c.measured},
                              {"bound", c.bound},
                              {"relation", c.relation},
                              {"passed", c.passed}});
        }
        suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", std::move(checks)}});
        all = all && r.passed();
    }
    return nlohmann::json{{"passed", all}, {"suites", std::move(suites)}}.dump(2) + "\n";
}

}  // namespace hqc::harness

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

#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hybridqc/harness/results.hpp"
#include "hybridqc/harness/runner.hpp"
#include "hybridqc/harness/scenarios.hpp"
#include "hybridqc/harness/verify.hpp"

namespace hqc::harness {
namespace {

ScenarioConfig small(const std::string& name, std::size_t n, double horizon) {
    ScenarioConfig cfg = bundled_scenario(name);
    cfg.particles = n;
    cfg.horizon = horizon;
    std::vector<double> times;
    for (double t : cfg.observation_times)
        if (t <= horizon) times.push_back(t);
    cfg.observation_times = times;
    return cfg;
}

TEST(RunSimulate, DecoupledInitialState) {
    const ScenarioConfig cfg = small("decoupled_qubit", 4000, 1.0);
    const ResultRecord r = run_simulate(cfg);
    EXPECT_EQ(r.reference_kind, "unitary");
    ASSERT_EQ(r.observations.size(), cfg.observation_times.size());
    const auto& first = r.observations.front();
    EXPECT_EQ(first.time, 0.0);
    const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
    EXPECT_LE(trace_distance(QuantumDensityMatrix(first.rho), QuantumDensityMatrix(half)), 6.0 / std::sqrt(4000.0));
    for (const auto& o : r.observations) {
        ASSERT_TRUE(o.trace_distance.has_value());
        EXPECT_LE(*o.trace_distance, 6.0 / std::sqrt(4000.0));
        EXPECT_LT(o.estimator_identity, 1e-12);
        EXPECT_FALSE(o.cells.empty());
        for (const auto& c : o.cells) {
            ASSERT_EQ(c.lower.size(), 1u);
            EXPECT_LE(c.lower[0], c.center[0]);
            EXPECT_GE(c.upper[0], c.center[0]);
        }
    }
}

TEST(RunSimulate, Deterministic) {
    const ScenarioConfig cfg = small("qubit_oscillator", 300, 1.0);
    EXPECT_EQ(result_json(run_simulate(cfg)), result_json(run_simulate(cfg)));
    ScenarioConfig other = cfg;
    other.seed += 1;
    EXPECT_NE(result_json(run_simulate(cfg)), result_json(run_simulate(other)));
}

TEST(RunSimulate, QubitOscillatorSmoke) {
    const ScenarioConfig cfg = small("qubit_oscillator", 500, 3.0);
    const ResultRecord r = run_simulate(cfg);
    // interacting oscillator: no closed-form reference
    EXPECT_EQ(r.reference_kind, "none");
    for (std::size_t i = 0; i < r.observations.size(); ++i) {
        const auto& o = r.observations[i];
        if (i > 0) EXPECT_GT(o.time, r.observations[i - 1].time);
        EXPECT_LT(o.energy_drift, 1e-7);
        EXPECT_LT(o.norm_drift, 1e-9);
        EXPECT_LT(o.estimator_identity, 1e-12);
        EXPECT_GE(o.rho_check.min_eigenvalue, -kPositivityTolerance);
        EXPECT_LT(o.rho_check.trace_error, kTraceTolerance);
        EXPECT_LT(o.worst_cell_check, kPositivityTolerance);
    }
    EXPECT_EQ(r.observations.back().steps, 3000u);

    const auto j = nlohmann::json::parse(result_json(r));
    EXPECT_EQ(j["format"], "hybridqc-result/1");
    EXPECT_EQ(j["observations"].size(), r.observations.size());
    EXPECT_FALSE(j.contains("wall_seconds"));
}

TEST(RunSimulate, FrozenClassicalReference) {
    const ScenarioConfig cfg = small("frozen_classical", 2000, 1.0);
    const ResultRecord r = run_simulate(cfg);
    EXPECT_EQ(r.reference_kind, "frozen_classical");
    for (const auto& o : r.observations) EXPECT_LE(*o.trace_distance, 6.0 / std::sqrt(2000.0));
}

TEST(RunCompare, IdenticalDensities) {
    ScenarioConfig cfg = small("qubit_oscillator", 2000, 2.0);
    cfg.density_b = cfg.density_a;
    cfg.pairing = "explicit";
    const ResultRecord r = run_compare(cfg);
    ASSERT_TRUE(r.initial_distance.has_value());
    EXPECT_LE(*r.initial_distance, 6.0 / std::sqrt(2000.0));
    for (const auto& o : r.observations) EXPECT_LE(*o.trace_distance, 6.0 / std::sqrt(2000.0)) << o.time;
}

TEST(RunCompare, SameMomentWithoutInteraction) {
    ScenarioConfig cfg = small("qubit_oscillator_compare", 2000, 3.0);
    cfg.interaction = InteractionConfig{};
    const ResultRecord r = run_compare(cfg);
    for (const auto& o : r.observations) {
        EXPECT_LE(*o.trace_distance, 6.0 / std::sqrt(2000.0)) << o.time;
        EXPECT_LT(o.estimator_identity, 1e-12);
    }
}

TEST(RunCompare, NeedsSecondDensity) {
    EXPECT_THROW(run_compare(small("decoupled_qubit", 10, 1.0)), ConfigInvalid);
}

TEST(Verify, Reports) {
    const VerifyReport identities = run_verify("identities");
    EXPECT_TRUE(identities.passed());
    bool has_bracket = false;
    for (const auto& c : identities.checks) {
        has_bracket = has_bracket || c.name == "bracket_commutator_identity";
        EXPECT_TRUE(c.passed) << c.name << " " << c.measured;
    }
    EXPECT_TRUE(has_bracket);

    const VerifyReport unknown = run_verify("nonsense");
    EXPECT_FALSE(unknown.passed());
    const auto j = nlohmann::json::parse(report_json({identities, unknown}));
    EXPECT_FALSE(j["passed"].get<bool>());
}

// Monte Carlo bands: single estimates within 3/sqrt(n), distances between two
// independent estimates within 6/sqrt(n), at three cloud sizes and several seeds.
TEST(ErrorBands, HoldAtThreeSizes) {
    ScenarioConfig cfg = bundled_scenario("qubit_oscillator_compare");
    cfg.observation_times = {0.0};
    const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        cfg.particles = n;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            cfg.seed = seed;
            const ResultRecord r = run_compare(cfg);
            const auto& o = r.observations.front();
            const double band = 3.0 / std::sqrt(static_cast<double>(n));
            EXPECT_LE(trace_distance(QuantumDensityMatrix(o.rho), QuantumDensityMatrix(half)), band);
            EXPECT_LE(trace_distance(QuantumDensityMatrix(*o.rho_b), QuantumDensityMatrix(half)), band);
            EXPECT_LE(*o.trace_distance, 2.0 * band);
        }
    }
}

// The reduced state of the interacting oscillator is not unitarily evolved:
// its spectrum moves by more than ten error bands.
TEST(Regression, EigenvaluesChangeUnderInteraction) {
    const ScenarioConfig cfg = bundled_scenario("qubit_oscillator");
    const ResultRecord r = run_simulate(cfg);
    const double band = 3.0 / std::sqrt(static_cast<double>(cfg.particles));
    const double start = QuantumDensityMatrix(r.observations.front().rho).eigenvalues()[1];
    double change = 0.0;
    for (const auto& o : r.observations) {
        change = std::max(change, std::abs(QuantumDensityMatrix(o.rho).eigenvalues()[1] - start));
    }
    EXPECT_GT(change, 10.0 * band) << change;
}

// Frozen result of the bundled comparison (seeded, so exact up to platform
// floating point differences).
TEST(Regression, HeadlineSeparation) {
    const ResultRecord r = run_compare(bundled_scenario("qubit_oscillator_compare"));
    double peak = 0.0;
    for (const auto& o : r.observations) peak = std::max(peak, *o.trace_distance);
    EXPECT_LE(*r.initial_distance, 0.06);
    EXPECT_NEAR(peak, 0.2390, 5e-4);
    EXPECT_NEAR(r.observations.back().time, 10.0, 1e-12);
}

}  // namespace
}  // namespace hqc::harness

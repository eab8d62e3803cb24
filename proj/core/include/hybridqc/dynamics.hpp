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

#include <functional>
#include <vector>

#include "hybridqc/hamiltonian.hpp"

namespace hqc {

struct HybridPoint {
    ClassicalPoint classical;
    QuantumPoint quantum;
};

// Unconstrained coordinates (q, p, x, y) of the hybrid phase space. Scalar
// fields are evaluated here so that they can be differentiated off the shell.
struct PhaseCoordinates {
    RVector q;
    RVector p;
    RVector x;
    RVector y;

    static PhaseCoordinates of(const HybridPoint& z);
};

using ScalarField = std::function<double(const PhaseCoordinates&)>;

double total_energy(const HybridHamiltonian& h, const HybridPoint& z);

// H_t as a field on unconstrained coordinates (the quantum terms are the
// quadratic forms c^H A c with c = (x + i y) / sqrt(2)).
ScalarField energy_field(const HybridHamiltonian& h);

inline constexpr double kBracketStep = 1e-5;

// Composite bracket: canonical classical part plus (1/hbar) times the
// quantum-coordinate part, with central-difference gradients.
double hybrid_poisson(const ScalarField& f1, const ScalarField& f2, const HybridPoint& z,
                      double hbar = 1.0, double step = kBracketStep);

struct Tangent {
    RVector dq;
    RVector dp;
    RVector dx;
    RVector dy;
};

// Mean-field form of the hybrid Hamilton equations.
Tangent vector_field(const HybridHamiltonian& h, const HybridPoint& z);

// Packed state used by the integrator: q, p and the complex amplitudes c.
struct PhaseState {
    RVector q;
    RVector p;
    CVector c;

    static PhaseState of(const HybridPoint& z);
    HybridPoint to_point() const;
};

inline constexpr double kStepRejectNormDrift = 1e-6;

struct DriftReport {
    double energy = 0.0;  // max relative |H_t - H_t(0)| / max(1, |H_t(0)|)
    double norm = 0.0;    // max |norm - 1|
    std::size_t steps = 0;
};

// Fixed-step classical RK4 on (q, p, c). Holds scratch buffers, so one
// instance per thread; the Hamiltonian is shared read-only.
class Propagator {
public:
    explicit Propagator(const HybridHamiltonian& h);

    // Advances `state` by `duration` (may be negative) in round(|duration|/dt)
    // equal steps. Energy drift is evaluated only at the end; norm drift after
    // every step. Throws StepRejected when the norm drift exceeds 1e-6.
    DriftReport advance(PhaseState& state, double duration, double dt);

    // Same, but calls observer(time, state, drift) after every step.
    DriftReport advance_observed(
        PhaseState& state, double duration, double dt,
        const std::function<void(double, const PhaseState&, const DriftReport&)>& observer);

    double energy(const PhaseState& state);
    void derivative(const PhaseState& state, RVector& dq, RVector& dp, CVector& dc);

    const HybridHamiltonian& hamiltonian() const { return *h_; }

private:
    void load(const PhaseState& state);
    void store(PhaseState& state) const;
    void eval(const double* y, double* dy) { (this->*eval_)(y, dy); }
    // D > 0 fixes the quantum dimension at compile time; D == 0 is generic.
    template <std::size_t D>
    void eval_impl(const double* y, double* dy);
    double energy_packed(const double* y);
    void build_generator(const double* q, const double* p);
    void rk4_step(double h);
    double packed_norm() const;

    const HybridHamiltonian* h_;
    std::size_t k_;
    std::size_t d_;
    std::size_t terms_;
    double inv_hbar_;
    void (Propagator::*eval_)(const double*, double*);
    std::vector<Complex> hq_;
    std::vector<Complex> term_mats_;  // terms * d * d, row-major
    std::vector<Complex> generator_;  // d * d
    std::vector<double> work_, s_, sq_, sp_, gq_, gp_, expect_;
    std::vector<double> y_, carry_, tmp_, k1_, k2_, k3_, k4_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<HybridPoint> points;
    std::vector<double> energy_drift;
    std::vector<double> norm_drift;

    double max_energy_drift() const;
    double max_norm_drift() const;
};

// Integrates from z0 over [0, T]. Every `record_stride`-th step is recorded,
// plus the first and last points.
Trajectory integrate(const HybridHamiltonian& h, const HybridPoint& z0, double horizon, double dt,
                     std::size_t record_stride = 1);

}  // namespace hqc

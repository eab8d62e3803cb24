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
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "hybridqc/dynamics.hpp"

namespace hqc {

// Classical factors -----------------------------------------------------------

struct GaussianFactor {
    RVector q0;
    RVector p0;
    RVector sigma_q;
    RVector sigma_p;
};

struct PointMassFactor {
    RVector q0;
    RVector p0;
};

using ClassicalFactor = std::variant<GaussianFactor, PointMassFactor>;

// Quantum factors -------------------------------------------------------------
//
// Quantum densities are taken with respect to the uniform probability measure
// on the unit-norm shell, so HaarUniform has density 1 everywhere.

struct HaarUniform {
    Eigen::Index dim;
};

struct PointMixture {
    std::vector<QuantumPoint> points;
    std::vector<double> weights;
};

// rho(q, p, x, y) = rho_c(q, p) <psi| f(q, p) |psi>, with f rescaled to trace d
// at every classical point so the quantum factor integrates to one.
struct QuadraticForm {
    Eigen::Index dim;
    std::function<HermitianOperator(const ClassicalPoint&)> form;
};

using QuantumFactor = std::variant<HaarUniform, PointMixture, QuadraticForm>;

class DensitySpec {
public:
    DensitySpec(ClassicalFactor classical, QuantumFactor quantum);

    const ClassicalFactor& classical() const { return classical_; }
    const QuantumFactor& quantum() const { return quantum_; }
    Eigen::Index classical_dof() const;
    Eigen::Index quantum_dim() const;

    // Point masses evaluate to +inf on their support and 0 elsewhere.
    double classical_density(const ClassicalPoint& cp) const;
    double quantum_density(const ClassicalPoint& cp, const QuantumPoint& pt) const;
    double evaluate(const HybridPoint& z) const;

    // First moment of the quantum factor at cp (the initial conditional state).
    QuantumDensityMatrix conditional_state(const ClassicalPoint& cp) const;

    // Trace-d rescaling of the QuadraticForm operator at cp.
    CMatrix normalized_form(const ClassicalPoint& cp) const;

private:
    ClassicalFactor classical_;
    QuantumFactor quantum_;
};

// Particles -------------------------------------------------------------------

struct Particle {
    HybridPoint point;
    double weight;
};

class ParticleCloud {
public:
    ParticleCloud(std::vector<Particle> particles, double time);

    std::size_t size() const { return particles_.size(); }
    bool empty() const { return particles_.empty(); }
    double time() const { return time_; }
    const std::vector<Particle>& particles() const { return particles_; }
    const Particle& operator[](std::size_t i) const { return particles_[i]; }
    auto begin() const { return particles_.begin(); }
    auto end() const { return particles_.end(); }

    Eigen::Index classical_dof() const;
    Eigen::Index quantum_dim() const;
    double total_weight() const;

private:
    std::vector<Particle> particles_;
    double time_;
};

inline constexpr double kMinAcceptanceRate = 1e-4;

// n independent draws with weight 1/n. Particle i uses random stream i of seed.
ParticleCloud sample(const DensitySpec& spec, std::size_t n, std::uint64_t seed);

struct TransportResult {
    ParticleCloud cloud;
    DriftReport drift;  // maxima over particles
};

// Moves every particle along its characteristic for time T (may be negative);
// weights are carried unchanged.
TransportResult transport_with_diagnostics(const ParticleCloud& cloud, const HybridHamiltonian& h,
                                           double duration, double dt);
ParticleCloud transport(const ParticleCloud& cloud, const HybridHamiltonian& h, double duration,
                        double dt);

// rho(z; t), by integrating z back to time 0 and evaluating the initial density.
double pullback_density(const DensitySpec& spec, const HybridHamiltonian& h, const HybridPoint& z,
                        double t, double dt);

// Relative RMS residual of the least-squares fit of a Hermitian form
// <psi|G|psi> to rho(cp, psi; t) at m uniformly drawn quantum points.
double quadraticity_residual(const DensitySpec& spec, const HybridHamiltonian& h,
                             const ClassicalPoint& cp, double t, std::size_t m,
                             std::uint64_t seed, double dt = 1e-3);

// Two densities with the same classical factor and the same first moment I/d:
// (Haar uniform, equal mixture of the computational basis states).
std::pair<DensitySpec, DensitySpec> same_moment_pair(const QuantumDensityMatrix& target,
                                                     const ClassicalFactor& classical);

}  // namespace hqc

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

#include <optional>
#include <vector>

#include "hybridqc/ensembles.hpp"

namespace hqc {

enum class GridCoordinate { Position, Momentum };

struct GridAxis {
    GridCoordinate coordinate = GridCoordinate::Position;
    Eigen::Index index = 0;
    double lower = 0.0;
    double upper = 1.0;
    std::size_t bins = 1;

    double width() const { return (upper - lower) / static_cast<double>(bins); }
};

// Rectangular binning of a subset of the classical coordinates. Cells are
// half-open and numbered row-major over the axes in the order given.
class ClassicalGrid {
public:
    explicit ClassicalGrid(std::vector<GridAxis> axes);

    const std::vector<GridAxis>& axes() const { return axes_; }
    std::size_t cell_count() const { return cell_count_; }
    double cell_volume() const;

    std::optional<std::size_t> locate(const ClassicalPoint& cp) const;
    std::vector<std::size_t> cell_indices(std::size_t cell) const;
    std::vector<double> cell_center(std::size_t cell) const;

private:
    std::vector<GridAxis> axes_;
    std::size_t cell_count_;
};

// Binned hybrid statistical operator. cells[i] approximates the integral of
// rho(q, p; t) over cell i, so its trace is the probability mass in the cell.
struct HybridStatOp {
    ClassicalGrid grid;
    std::vector<CMatrix> cells;
    std::vector<std::size_t> counts;
    CMatrix remainder;  // contribution of particles outside the grid
    std::size_t remainder_count = 0;
    double time = 0.0;
    double total_weight_captured = 0.0;
    std::size_t cloud_size = 0;

    double cell_mass(std::size_t cell) const { return cells.at(cell).trace().real(); }
};

HybridStatOp estimate_hybrid_statop(const ParticleCloud& cloud, const ClassicalGrid& grid);

// Cell matrix over its trace. Throws LowMass below mass_floor; the default
// floor is 10 / cloud_size.
QuantumDensityMatrix conditional_state(const HybridStatOp& statop, std::size_t cell,
                                       std::optional<double> mass_floor = std::nullopt);

// Weighted mean of the particle projectors.
QuantumDensityMatrix estimate_quantum_state(const ParticleCloud& cloud);

// max |eigenvalue| of a Hermitian matrix.
double operator_norm(const CMatrix& hermitian);

double trace_distance(const QuantumDensityMatrix& a, const QuantumDensityMatrix& b);

// (1/i hbar)[H_q, rho] + (1/i hbar) E_cloud[[V(q, p), Pi(x, y)]]
CMatrix eq19_rhs(const ParticleCloud& cloud, const HybridHamiltonian& h);

// exp(-i H T / hbar) by eigendecomposition.
CMatrix unitary_propagator(const HermitianOperator& hamiltonian, double t, double hbar = 1.0);

QuantumDensityMatrix unitary_oracle(const QuantumDensityMatrix& rho0, const HermitianOperator& hq,
                                    double t, double hbar = 1.0);

// Reduced state at time T for H_c = 0 and a position-only interaction: the
// classical positions are frozen, so rho(T) = int dq rho_c(q) U_q rho_q(0) U_q^H
// with U_q = exp(-i (H_q + V(q)) T / hbar). Gaussian factors are integrated by
// tensor Gauss-Legendre quadrature over mean +- 8 sigma.
QuantumDensityMatrix frozen_classical_oracle(const DensitySpec& spec, const HybridHamiltonian& h,
                                             double t, std::size_t quad_points);

// Conditional state at a fixed classical point under the same assumptions.
QuantumDensityMatrix frozen_classical_conditional(const DensitySpec& spec,
                                                  const HybridHamiltonian& h,
                                                  const ClassicalPoint& cp, double t);

}  // namespace hqc

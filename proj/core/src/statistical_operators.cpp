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

#include "hybridqc/statistical_operators.hpp"

#include <gsl/gsl_integration.h>

#include <array>
#include <cmath>
#include <memory>

#include "hybridqc/parallel.hpp"

namespace hqc {

namespace {

constexpr Complex kI{0.0, 1.0};

// rho += w c c^H on the upper triangle only.
void add_projector(CMatrix& acc, const CVector& c, double w) {
    const Eigen::Index d = c.size();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex wi = w * c[i];
        for (Eigen::Index j = i; j < d; ++j) acc(i, j) += wi * std::conj(c[j]);
    }
}

CMatrix mirror_upper(CMatrix m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        m(i, i) = Complex(m(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
    }
    return m;
}

struct GslTable {
    explicit GslTable(std::size_t n) : table(gsl_integration_glfixed_table_alloc(n)) {
        if (table == nullptr) throw InvalidArgument("cannot build Gauss-Legendre table");
    }
    ~GslTable() { gsl_integration_glfixed_table_free(table); }
    GslTable(const GslTable&) = delete;
    GslTable& operator=(const GslTable&) = delete;
    gsl_integration_glfixed_table* table;
};

struct QuadratureAxis {
    bool momentum;
    Eigen::Index index;
    double mean;
    double sigma;
};

constexpr std::array<double, 4> kProbeValues{0.4, -1.3, 2.2, -0.05};

void require_frozen_classical(const HybridHamiltonian& h) {
    const auto k = static_cast<std::size_t>(h.classical_dof());
    const std::size_t terms = h.interaction().term_count();
    std::vector<double> q(k), p(k), alt_p(k), gq(k), gp(k);
    std::vector<double> s(terms), s_alt(terms), sq(terms * k), sp(terms * k);
    for (std::size_t trial = 0; trial < kProbeValues.size(); ++trial) {
        for (std::size_t i = 0; i < k; ++i) {
            q[i] = kProbeValues[(trial + i) % kProbeValues.size()];
            p[i] = kProbeValues[(trial + i + 1) % kProbeValues.size()];
            alt_p[i] = 3.0 * p[i] + 0.7;
        }
        h.classical().gradient(q, p, gq, gp);
        bool zero = h.classical().value(q, p) == 0.0;
        for (std::size_t i = 0; i < k; ++i) zero = zero && gq[i] == 0.0 && gp[i] == 0.0;
        if (!zero) throw UnsupportedHamiltonian("frozen-classical oracle needs H_c = 0");
        if (terms == 0) continue;
        h.interaction().coefficients(q, p, s, sq, sp);
        h.interaction().coefficients(q, alt_p, s_alt, sq, sp);
        for (std::size_t m = 0; m < terms; ++m) {
            if (s[m] != s_alt[m]) {
                throw UnsupportedHamiltonian("frozen-classical oracle needs V to depend on q only");
            }
        }
        for (double v : sp) {
            if (v != 0.0) {
                throw UnsupportedHamiltonian("frozen-classical oracle needs V to depend on q only");
            }
        }
    }
}

CMatrix evolve_conditional(const DensitySpec& spec, const HybridHamiltonian& h,
                           const ClassicalPoint& cp, double t) {
    const HermitianOperator generator = h.quantum() + h.interaction_operator(cp);
    const CMatrix u = unitary_propagator(generator, t, h.hbar());
    return u * spec.conditional_state(cp).matrix() * u.adjoint();
}

}  // namespace

ClassicalGrid::ClassicalGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)), cell_count_(1) {
    if (axes_.empty()) throw InvalidArgument("grid needs at least one axis");
    for (const auto& a : axes_) {
        if (!std::isfinite(a.lower) || !std::isfinite(a.upper) || !(a.upper > a.lower)) {
            throw InvalidArgument("grid bounds must be finite with upper > lower");
        }
        if (a.bins < 1) throw InvalidArgument("grid bin counts must be at least 1");
        if (a.index < 0) throw InvalidArgument("grid axis index must be non-negative");
        cell_count_ *= a.bins;
    }
}

double ClassicalGrid::cell_volume() const {
    double v = 1.0;
    for (const auto& a : axes_) v *= a.width();
    return v;
}

std::optional<std::size_t> ClassicalGrid::locate(const ClassicalPoint& cp) const {
    std::size_t cell = 0;
    for (const auto& a : axes_) {
        const RVector& coord = a.coordinate == GridCoordinate::Position ? cp.q : cp.p;
        if (a.index >= coord.size()) {
            throw DimensionMismatch("grid axis", static_cast<std::size_t>(a.index + 1),
                                    static_cast<std::size_t>(coord.size()));
        }
        const double v = coord[a.index];
        if (!(v >= a.lower && v < a.upper)) return std::nullopt;
        auto bin = static_cast<std::size_t>((v - a.lower) / a.width());
        if (bin >= a.bins) bin = a.bins - 1;
        cell = cell * a.bins + bin;
    }
    return cell;
}

std::vector<std::size_t> ClassicalGrid::cell_indices(std::size_t cell) const {
    if (cell >= cell_count_) throw InvalidArgument("cell index out of range");
    std::vector<std::size_t> idx(axes_.size());
    for (std::size_t a = axes_.size(); a-- > 0;) {
        idx[a] = cell % axes_[a].bins;
        cell /= axes_[a].bins;
    }
    return idx;
}

std::vector<double> ClassicalGrid::cell_center(std::size_t cell) const {
    const auto idx = cell_indices(cell);
    std::vector<double> center(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        center[a] = axes_[a].lower + (static_cast<double>(idx[a]) + 0.5) * axes_[a].width();
    }
    return center;
}

HybridStatOp estimate_hybrid_statop(const ParticleCloud& cloud, const ClassicalGrid& grid) {
    if (cloud.empty()) throw EmptyCloud();
    const Eigen::Index d = cloud.quantum_dim();
    const std::size_t cells = grid.cell_count();

    struct Acc {
        std::vector<CMatrix> cells;
        std::vector<std::size_t> counts;
        CMatrix remainder;
        std::size_t remainder_count = 0;
    };
    Acc total = blocked_reduce<Acc>(
        cloud.size(),
        [&] {
            return Acc{std::vector<CMatrix>(cells, CMatrix::Zero(d, d)),
                       std::vector<std::size_t>(cells, 0), CMatrix::Zero(d, d), 0};
        },
        [&](Acc& acc, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Particle& part = cloud[i];
                const CVector c = part.point.quantum.state();
                if (auto cell = grid.locate(part.point.classical)) {
                    add_projector(acc.cells[*cell], c, part.weight);
                    ++acc.counts[*cell];
                } else {
                    add_projector(acc.remainder, c, part.weight);
                    ++acc.remainder_count;
                }
            }
        },
        [](Acc& a, const Acc& b) {
            for (std::size_t i = 0; i < a.cells.size(); ++i) {
                a.cells[i] += b.cells[i];
                a.counts[i] += b.counts[i];
            }
            a.remainder += b.remainder;
            a.remainder_count += b.remainder_count;
        });

    HybridStatOp out{grid, {}, std::move(total.counts), mirror_upper(std::move(total.remainder)),
                     total.remainder_count, cloud.time(), 0.0, cloud.size()};
    out.cells.reserve(cells);
    for (auto& m : total.cells) {
        out.cells.push_back(mirror_upper(std::move(m)));
        out.total_weight_captured += out.cells.back().trace().real();
    }
    return out;
}

QuantumDensityMatrix conditional_state(const HybridStatOp& statop, std::size_t cell,
                                       std::optional<double> mass_floor) {
    if (cell >= statop.cells.size()) throw InvalidArgument("cell index out of range");
    const double floor =
        mass_floor.value_or(10.0 / static_cast<double>(std::max<std::size_t>(1, statop.cloud_size)));
    const double mass = statop.cell_mass(cell);
    if (!(mass >= floor) || mass <= 0.0) throw LowMass(cell, mass, floor);
    return QuantumDensityMatrix(statop.cells[cell] / mass);
}

QuantumDensityMatrix estimate_quantum_state(const ParticleCloud& cloud) {
    if (cloud.empty()) throw EmptyCloud();
    const Eigen::Index d = cloud.quantum_dim();
    CMatrix acc = blocked_reduce<CMatrix>(
        cloud.size(), [&] { return CMatrix(CMatrix::Zero(d, d)); },
        [&](CMatrix& m, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                add_projector(m, cloud[i].point.quantum.state(), cloud[i].weight);
            }
        },
        [](CMatrix& a, const CMatrix& b) { a += b; });
    return QuantumDensityMatrix(mirror_upper(std::move(acc)));
}

double operator_norm(const CMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double trace_distance(const QuantumDensityMatrix& a, const QuantumDensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("trace distance", static_cast<std::size_t>(a.dim()),
                                static_cast<std::size_t>(b.dim()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

CMatrix eq19_rhs(const ParticleCloud& cloud, const HybridHamiltonian& h) {
    if (cloud.empty()) throw EmptyCloud();
    if (cloud.quantum_dim() != h.quantum_dim() || cloud.classical_dof() != h.classical_dof()) {
        throw DimensionMismatch("cloud vs hamiltonian", static_cast<std::size_t>(h.quantum_dim()),
                                static_cast<std::size_t>(cloud.quantum_dim()));
    }
    const Eigen::Index d = h.quantum_dim();
    const CMatrix rho = estimate_quantum_state(cloud).matrix();
    const CMatrix& hq = h.quantum().matrix();
    CMatrix rhs = (hq * rho - rho * hq) / (kI * h.hbar());
    if (!h.has_interaction()) return rhs;

    const CMatrix coupling = blocked_reduce<CMatrix>(
        cloud.size(), [&] { return CMatrix(CMatrix::Zero(d, d)); },
        [&](CMatrix& acc, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const auto& z = cloud[i].point;
                const CMatrix v = h.interaction_matrix(as_span(z.classical.q), as_span(z.classical.p));
                const CVector c = z.quantum.state();
                const CVector vc = v * c;
                // [V, c c^H] = (V c) c^H - c (V c)^H
                acc.noalias() += cloud[i].weight * (vc * c.adjoint() - c * vc.adjoint());
            }
        },
        [](CMatrix& a, const CMatrix& b) { a += b; });
    rhs += coupling / (kI * h.hbar());
    return rhs;
}

CMatrix unitary_propagator(const HermitianOperator& hamiltonian, double t, double hbar) {
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian.matrix());
    const RVector& evals = solver.eigenvalues();
    CVector phases(evals.size());
    for (Eigen::Index j = 0; j < evals.size(); ++j) phases[j] = std::exp(-kI * evals[j] * t / hbar);
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

QuantumDensityMatrix unitary_oracle(const QuantumDensityMatrix& rho0, const HermitianOperator& hq,
                                    double t, double hbar) {
    if (rho0.dim() != hq.dim()) {
        throw DimensionMismatch("unitary oracle", static_cast<std::size_t>(hq.dim()),
                                static_cast<std::size_t>(rho0.dim()));
    }
    const CMatrix u = unitary_propagator(hq, t, hbar);
    const CMatrix rho = u * rho0.matrix() * u.adjoint();
    return QuantumDensityMatrix(0.5 * (rho + rho.adjoint()));
}

QuantumDensityMatrix frozen_classical_conditional(const DensitySpec& spec,
                                                  const HybridHamiltonian& h,
                                                  const ClassicalPoint& cp, double t) {
    require_frozen_classical(h);
    const CMatrix rho = evolve_conditional(spec, h, cp, t);
    return QuantumDensityMatrix(0.5 * (rho + rho.adjoint()));
}

QuantumDensityMatrix frozen_classical_oracle(const DensitySpec& spec, const HybridHamiltonian& h,
                                             double t, std::size_t quad_points) {
    require_frozen_classical(h);
    if (spec.classical_dof() != h.classical_dof() || spec.quantum_dim() != h.quantum_dim()) {
        throw DimensionMismatch("spec vs hamiltonian", static_cast<std::size_t>(h.quantum_dim()),
                                static_cast<std::size_t>(spec.quantum_dim()));
    }
    const Eigen::Index d = h.quantum_dim();

    const auto* gauss = std::get_if<GaussianFactor>(&spec.classical());
    if (gauss == nullptr) {
        const auto& mass = std::get<PointMassFactor>(spec.classical());
        return frozen_classical_conditional(spec, h, ClassicalPoint(mass.q0, mass.p0), t);
    }
    if (quad_points < 1) throw InvalidArgument("quadrature needs at least one node");

    // Momenta only matter when the initial conditional state depends on them.
    const bool integrate_momenta = std::holds_alternative<QuadraticForm>(spec.quantum());
    std::vector<QuadratureAxis> axes;
    for (Eigen::Index i = 0; i < gauss->q0.size(); ++i) {
        axes.push_back({false, i, gauss->q0[i], gauss->sigma_q[i]});
        if (integrate_momenta) axes.push_back({true, i, gauss->p0[i], gauss->sigma_p[i]});
    }

    const GslTable table(quad_points);
    std::vector<double> nodes(quad_points), weights(quad_points);
    for (std::size_t n = 0; n < quad_points; ++n) {
        // standard normal variable on [-8, 8]
        double xi = 0.0, wi = 0.0;
        gsl_integration_glfixed_point(-8.0, 8.0, n, &xi, &wi, table.table);
        nodes[n] = xi;
        weights[n] = wi * std::exp(-0.5 * xi * xi);
    }

    CMatrix acc = CMatrix::Zero(d, d);
    double total_weight = 0.0;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        ClassicalPoint cp(gauss->q0, gauss->p0);
        double w = 1.0;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            RVector& coord = axes[a].momentum ? cp.p : cp.q;
            coord[axes[a].index] = axes[a].mean + axes[a].sigma * nodes[idx[a]];
            w *= weights[idx[a]];
        }
        acc += w * evolve_conditional(spec, h, cp, t);
        total_weight += w;

        std::size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++idx[a] < quad_points) break;
            idx[a] = 0;
        }
        if (a == axes.size()) break;
    }
    acc /= total_weight;
    return QuantumDensityMatrix(0.5 * (acc + acc.adjoint()));
}

}  // namespace hqc

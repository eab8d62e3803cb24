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

#include "hybridqc/ensembles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "hybridqc/parallel.hpp"
#include "hybridqc/random.hpp"

namespace hqc {

namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kCloudWeightTolerance = 1e-9;
constexpr double kPointMatchTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxRejectionAttempts = 1000000;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::Index dof_of(const ClassicalFactor& f) {
    return std::visit([](const auto& v) { return v.q0.size(); }, f);
}

ClassicalPoint classical_mean(const ClassicalFactor& f) {
    return std::visit([](const auto& v) { return ClassicalPoint(v.q0, v.p0); }, f);
}

double gaussian_pdf(double v, double mean, double sigma) {
    const double z = (v - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double largest_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

double smallest_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ClassicalPoint draw_classical(const ClassicalFactor& f, ParticleRng& rng) {
    return std::visit(overloaded{
                          [&](const GaussianFactor& g) {
                              RVector q(g.q0.size()), p(g.p0.size());
                              for (Eigen::Index i = 0; i < q.size(); ++i)
                                  q[i] = g.q0[i] + g.sigma_q[i] * rng.normal();
                              for (Eigen::Index i = 0; i < p.size(); ++i)
                                  p[i] = g.p0[i] + g.sigma_p[i] * rng.normal();
                              return ClassicalPoint(std::move(q), std::move(p));
                          },
                          [](const PointMassFactor& m) { return ClassicalPoint(m.q0, m.p0); },
                      },
                      f);
}

std::size_t pick_component(const std::vector<double>& weights, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    // u may exceed the rounded cumulative sum; fall back to the last non-zero weight
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return 0;
}

}  // namespace

DensitySpec::DensitySpec(ClassicalFactor classical, QuantumFactor quantum)
    : classical_(std::move(classical)), quantum_(std::move(quantum)) {
    std::visit(overloaded{
                   [](const GaussianFactor& g) {
                       const auto k = g.q0.size();
                       if (g.p0.size() != k || g.sigma_q.size() != k || g.sigma_p.size() != k) {
                           throw DimensionMismatch("gaussian factor", static_cast<std::size_t>(k),
                                                   static_cast<std::size_t>(g.sigma_q.size()));
                       }
                       if ((g.sigma_q.array() <= 0.0).any() || (g.sigma_p.array() <= 0.0).any()) {
                           throw InvalidArgument("gaussian widths must be positive");
                       }
                   },
                   [](const PointMassFactor& m) {
                       if (m.p0.size() != m.q0.size()) {
                           throw DimensionMismatch("point mass", static_cast<std::size_t>(m.q0.size()),
                                                   static_cast<std::size_t>(m.p0.size()));
                       }
                   },
               },
               classical_);

    std::visit(overloaded{
                   [](const HaarUniform& h) {
                       if (h.dim < 2) throw InvalidArgument("quantum dimension must be at least 2");
                   },
                   [](const PointMixture& m) {
                       if (m.points.empty() || m.points.size() != m.weights.size()) {
                           throw InvalidArgument("point mixture needs one weight per point");
                       }
                       double total = 0.0;
                       for (std::size_t i = 0; i < m.points.size(); ++i) {
                           if (!(m.weights[i] >= 0.0)) {
                               throw InvalidArgument("mixture weights must be non-negative");
                           }
                           if (m.points[i].dim() != m.points.front().dim()) {
                               throw DimensionMismatch("mixture point",
                                                       static_cast<std::size_t>(m.points.front().dim()),
                                                       static_cast<std::size_t>(m.points[i].dim()));
                           }
                           total += m.weights[i];
                       }
                       if (!(std::abs(total - 1.0) <= kWeightTolerance)) {
                           throw InvalidArgument("mixture weights must sum to 1");
                       }
                   },
                   [](const QuadraticForm& f) {
                       if (f.dim < 2) throw InvalidArgument("quantum dimension must be at least 2");
                       if (!f.form) throw InvalidArgument("quadratic form operator is missing");
                   },
               },
               quantum_);

    if (const auto* f = std::get_if<QuadraticForm>(&quantum_)) {
        // Positivity at the classical mean and one width away along each axis.
        std::vector<ClassicalPoint> probes{classical_mean(classical_)};
        if (const auto* g = std::get_if<GaussianFactor>(&classical_)) {
            for (Eigen::Index i = 0; i < g->q0.size(); ++i) {
                for (double sign : {-1.0, 1.0}) {
                    ClassicalPoint cp(g->q0, g->p0);
                    cp.q[i] += sign * g->sigma_q[i];
                    probes.push_back(cp);
                    cp = ClassicalPoint(g->q0, g->p0);
                    cp.p[i] += sign * g->sigma_p[i];
                    probes.push_back(cp);
                }
            }
        }
        for (const auto& cp : probes) {
            const HermitianOperator op = f->form(cp);
            if (op.dim() != f->dim) {
                throw DimensionMismatch("quadratic form", static_cast<std::size_t>(f->dim),
                                        static_cast<std::size_t>(op.dim()));
            }
            if (smallest_eigenvalue(op.matrix()) < -kPositivityTolerance ||
                !(op.matrix().trace().real() > 0.0)) {
                throw InvalidArgument("quadratic form operator is not positive");
            }
        }
    }
}

Eigen::Index DensitySpec::classical_dof() const { return dof_of(classical_); }

Eigen::Index DensitySpec::quantum_dim() const {
    return std::visit(overloaded{
                          [](const HaarUniform& h) { return h.dim; },
                          [](const PointMixture& m) { return m.points.front().dim(); },
                          [](const QuadraticForm& f) { return f.dim; },
                      },
                      quantum_);
}

double DensitySpec::classical_density(const ClassicalPoint& cp) const {
    if (cp.dof() != classical_dof()) {
        throw DimensionMismatch("classical point", static_cast<std::size_t>(classical_dof()),
                                static_cast<std::size_t>(cp.dof()));
    }
    return std::visit(overloaded{
                          [&](const GaussianFactor& g) {
                              double v = 1.0;
                              for (Eigen::Index i = 0; i < cp.dof(); ++i) {
                                  v *= gaussian_pdf(cp.q[i], g.q0[i], g.sigma_q[i]);
                                  v *= gaussian_pdf(cp.p[i], g.p0[i], g.sigma_p[i]);
                              }
                              return v;
                          },
                          [&](const PointMassFactor& m) {
                              const bool hit = (cp.q - m.q0).cwiseAbs().maxCoeff() <= kPointMatchTolerance &&
                                               (cp.p - m.p0).cwiseAbs().maxCoeff() <= kPointMatchTolerance;
                              return cp.dof() == 0 || hit ? kInf : 0.0;
                          },
                      },
                      classical_);
}

CMatrix DensitySpec::normalized_form(const ClassicalPoint& cp) const {
    const auto* f = std::get_if<QuadraticForm>(&quantum_);
    if (f == nullptr) throw InvalidArgument("density has no quadratic form");
    const CMatrix m = f->form(cp).matrix();
    return m * (static_cast<double>(f->dim) / m.trace().real());
}

double DensitySpec::quantum_density(const ClassicalPoint& cp, const QuantumPoint& pt) const {
    if (pt.dim() != quantum_dim()) {
        throw DimensionMismatch("quantum point", static_cast<std::size_t>(quantum_dim()),
                                static_cast<std::size_t>(pt.dim()));
    }
    return std::visit(overloaded{
                          [](const HaarUniform&) { return 1.0; },
                          [&](const PointMixture& m) {
                              const CVector c = pt.state() / std::sqrt(pt.norm());
                              for (std::size_t i = 0; i < m.points.size(); ++i) {
                                  const double overlap = std::norm(m.points[i].state().dot(c));
                                  if (m.weights[i] > 0.0 && overlap >= 1.0 - kPointMatchTolerance) {
                                      return kInf;
                                  }
                              }
                              return 0.0;
                          },
                          [&](const QuadraticForm&) {
                              const CVector c = pt.state();
                              return c.dot(normalized_form(cp) * c).real();
                          },
                      },
                      quantum_);
}

double DensitySpec::evaluate(const HybridPoint& z) const {
    const double rc = classical_density(z.classical);
    if (rc == 0.0) return 0.0;
    const double rq = quantum_density(z.classical, z.quantum);
    if (rq == 0.0) return 0.0;
    return rc * rq;
}

QuantumDensityMatrix DensitySpec::conditional_state(const ClassicalPoint& cp) const {
    const Eigen::Index d = quantum_dim();
    return std::visit(overloaded{
                          [&](const HaarUniform&) { return QuantumDensityMatrix::maximally_mixed(d); },
                          [&](const PointMixture& m) {
                              CMatrix rho = CMatrix::Zero(d, d);
                              for (std::size_t i = 0; i < m.points.size(); ++i)
                                  rho += m.weights[i] * projector(m.points[i]).matrix();
                              return QuantumDensityMatrix(0.5 * (rho + rho.adjoint()));
                          },
                          [&](const QuadraticForm&) {
                              // E_haar[ <psi|F|psi> |psi><psi| ] = (F + tr(F) I) / (d (d + 1))
                              const CMatrix f = normalized_form(cp);
                              const CMatrix rho = (f + f.trace().real() * CMatrix::Identity(d, d)) /
                                                  static_cast<double>(d * (d + 1));
                              return QuantumDensityMatrix(0.5 * (rho + rho.adjoint()));
                          },
                      },
                      quantum_);
}

ParticleCloud::ParticleCloud(std::vector<Particle> particles, double time)
    : particles_(std::move(particles)), time_(time) {
    if (particles_.empty()) return;
    const Eigen::Index k = particles_.front().point.classical.dof();
    const Eigen::Index d = particles_.front().point.quantum.dim();
    for (const auto& p : particles_) {
        if (!(p.weight > 0.0)) throw InvalidArgument("particle weights must be positive");
        if (p.point.classical.dof() != k || p.point.quantum.dim() != d) {
            throw DimensionMismatch("particle", static_cast<std::size_t>(d),
                                    static_cast<std::size_t>(p.point.quantum.dim()));
        }
    }
    const double total = total_weight();
    if (!(std::abs(total - 1.0) <= kCloudWeightTolerance)) {
        throw InvalidArgument("particle weights must sum to 1, got " + std::to_string(total));
    }
}

Eigen::Index ParticleCloud::classical_dof() const {
    if (particles_.empty()) throw EmptyCloud();
    return particles_.front().point.classical.dof();
}

Eigen::Index ParticleCloud::quantum_dim() const {
    if (particles_.empty()) throw EmptyCloud();
    return particles_.front().point.quantum.dim();
}

double ParticleCloud::total_weight() const {
    double total = 0.0;
    for (const auto& p : particles_) total += p.weight;
    return total;
}

ParticleCloud sample(const DensitySpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("sample size must be at least 1");
    const Eigen::Index d = spec.quantum_dim();
    const double weight = 1.0 / static_cast<double>(n);
    std::vector<std::optional<Particle>> drawn(n);

    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ParticleRng rng(seed, i);
            ClassicalPoint cp = draw_classical(spec.classical(), rng);
            CVector c = std::visit(
                overloaded{
                    [&](const HaarUniform&) { return haar_state(d, rng); },
                    [&](const PointMixture& m) {
                        return m.points[pick_component(m.weights, rng.uniform())].state();
                    },
                    [&](const QuadraticForm&) {
                        const CMatrix f = spec.normalized_form(cp);
                        const double bound = largest_eigenvalue(f);
                        if (!(1.0 / bound >= kMinAcceptanceRate)) throw RejectionStall(1.0 / bound);
                        for (std::size_t attempt = 1; attempt <= kMaxRejectionAttempts; ++attempt) {
                            CVector candidate = haar_state(d, rng);
                            const double value = candidate.dot(f * candidate).real();
                            if (rng.uniform() * bound < value) return candidate;
                        }
                        throw RejectionStall(1.0 / static_cast<double>(kMaxRejectionAttempts));
                    },
                },
                spec.quantum());
            drawn[i] = Particle{{std::move(cp), to_coordinates(c)}, weight};
        }
    });

    std::vector<Particle> particles;
    particles.reserve(n);
    for (auto& p : drawn) particles.push_back(std::move(*p));
    return ParticleCloud(std::move(particles), 0.0);
}

TransportResult transport_with_diagnostics(const ParticleCloud& cloud, const HybridHamiltonian& h,
                                           double duration, double dt) {
    if (cloud.empty()) throw EmptyCloud();
    if (cloud.classical_dof() != h.classical_dof() || cloud.quantum_dim() != h.quantum_dim()) {
        throw DimensionMismatch("cloud vs hamiltonian", static_cast<std::size_t>(h.quantum_dim()),
                                static_cast<std::size_t>(cloud.quantum_dim()));
    }
    if (duration == 0.0) return {cloud, {}};

    const std::size_t n = cloud.size();
    std::vector<std::optional<Particle>> moved(n);
    std::vector<DriftReport> drifts(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        Propagator prop(h);
        for (std::size_t i = begin; i < end; ++i) {
            PhaseState state = PhaseState::of(cloud[i].point);
            try {
                drifts[i] = prop.advance(state, duration, dt);
            } catch (const StepRejected& e) {
                throw StepRejected(cloud.time() + e.time(), e.norm_drift(), i);
            }
            moved[i] = Particle{state.to_point(), cloud[i].weight};
        }
    });

    DriftReport worst;
    std::vector<Particle> particles;
    particles.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        particles.push_back(std::move(*moved[i]));
        worst.energy = std::max(worst.energy, drifts[i].energy);
        worst.norm = std::max(worst.norm, drifts[i].norm);
        worst.steps = std::max(worst.steps, drifts[i].steps);
    }
    return {ParticleCloud(std::move(particles), cloud.time() + duration), worst};
}

ParticleCloud transport(const ParticleCloud& cloud, const HybridHamiltonian& h, double duration,
                        double dt) {
    return transport_with_diagnostics(cloud, h, duration, dt).cloud;
}

double pullback_density(const DensitySpec& spec, const HybridHamiltonian& h, const HybridPoint& z,
                        double t, double dt) {
    if (t == 0.0) return spec.evaluate(z);
    Propagator prop(h);
    PhaseState state = PhaseState::of(z);
    prop.advance(state, -t, dt);
    return spec.evaluate(state.to_point());
}

double quadraticity_residual(const DensitySpec& spec, const HybridHamiltonian& h,
                             const ClassicalPoint& cp, double t, std::size_t m, std::uint64_t seed,
                             double dt) {
    const Eigen::Index d = spec.quantum_dim();
    const auto params = static_cast<Eigen::Index>(d * d);
    if (m < static_cast<std::size_t>(2 * params)) {
        throw InvalidArgument("quadraticity fit needs at least 2 d^2 samples");
    }
    const auto rows = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd design(rows, params);
    RVector values(rows);

    for (Eigen::Index r = 0; r < rows; ++r) {
        ParticleRng rng(seed, static_cast<std::uint64_t>(r));
        const CVector c = haar_state(d, rng);
        values[r] = pullback_density(spec, h, {cp, to_coordinates(c)}, t, dt);
        if (!std::isfinite(values[r])) {
            throw InvalidArgument("quadraticity needs a pointwise-finite density");
        }
        // <psi|G|psi> = sum_j G_jj |c_j|^2 + sum_{j<l} 2 Re(G_jl) Re(c_j* c_l) - 2 Im(G_jl) Im(c_j* c_l)
        Eigen::Index col = 0;
        for (Eigen::Index j = 0; j < d; ++j) design(r, col++) = std::norm(c[j]);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index l = j + 1; l < d; ++l) {
                const Complex cross = std::conj(c[j]) * c[l];
                design(r, col++) = 2.0 * cross.real();
                design(r, col++) = -2.0 * cross.imag();
            }
        }
    }

    const RVector coeffs = design.colPivHouseholderQr().solve(values);
    const double scale = values.norm();
    if (scale == 0.0) return 0.0;
    return (design * coeffs - values).norm() / scale;
}

std::pair<DensitySpec, DensitySpec> same_moment_pair(const QuantumDensityMatrix& target,
                                                     const ClassicalFactor& classical) {
    const Eigen::Index d = target.dim();
    const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
    if ((target.matrix() - mixed).cwiseAbs().maxCoeff() > 1e-12) {
        throw UnsupportedTarget("same-moment pairs are only available for the maximally mixed state");
    }
    PointMixture basis;
    for (Eigen::Index j = 0; j < d; ++j) {
        basis.points.push_back(to_coordinates(CVector::Unit(d, j)));
        basis.weights.push_back(1.0 / static_cast<double>(d));
    }
    return {DensitySpec(classical, HaarUniform{d}), DensitySpec(classical, std::move(basis))};
}

}  // namespace hqc

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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hybridqc/ensembles.hpp"
#include "hybridqc/statistical_operators.hpp"
#include "oracles.hpp"

namespace hqc {
namespace {

RVector one(double v) { return RVector::Constant(1, v); }

GaussianFactor gaussian(double q0, double p0, double sq, double sp) {
    return {one(q0), one(p0), one(sq), one(sp)};
}

HybridHamiltonian harmonic_only() {
    return HybridHamiltonian(1, std::make_shared<HarmonicOscillator>(1.0, 1.0),
                             HermitianOperator::pauli_z() * 0.5, nullptr);
}

HybridHamiltonian qubit_oscillator() {
    return HybridHamiltonian(1, std::make_shared<HarmonicOscillator>(1.0, 1.0),
                             HermitianOperator::pauli_z() * 0.5,
                             std::make_shared<LinearCoupling>(0.5, HermitianOperator::pauli_x()));
}

CMatrix mean_projector(const ParticleCloud& cloud) {
    const Eigen::Index d = cloud.quantum_dim();
    CMatrix m = CMatrix::Zero(d, d);
    for (const auto& p : cloud) {
        const CVector c = from_coordinates(p.point.quantum);
        m += p.weight * c * c.adjoint();
    }
    return m;
}

DensitySpec quadratic_spec() {
    CMatrix base = CMatrix::Zero(2, 2);
    base(0, 0) = 1.5;
    base(1, 1) = 0.5;
    const CMatrix slope = 0.4 * oracle::pauli_x();
    return DensitySpec(gaussian(1.0, 0.0, 0.2, 0.2),
                       QuadraticForm{2, [base, slope](const ClassicalPoint& cp) {
                                         return HermitianOperator(base + std::tanh(cp.q[0]) * slope);
                                     }});
}

TEST(Sample, PointMassAndPointMixtureAreIdentical) {
    const DensitySpec spec(PointMassFactor{one(0.5), one(-0.5)},
                           PointMixture{{to_coordinates(oracle::ket({1.0, 0.0}))}, {1.0}});
    const ParticleCloud cloud = sample(spec, 50, 3);
    ASSERT_EQ(cloud.size(), 50u);
    for (const auto& p : cloud) {
        EXPECT_EQ(p.point.classical.q, cloud[0].point.classical.q);
        EXPECT_EQ(p.point.quantum.x(), cloud[0].point.quantum.x());
        EXPECT_EQ(p.point.quantum.y(), cloud[0].point.quantum.y());
        EXPECT_EQ(p.weight, 1.0 / 50.0);
    }
}

TEST(Sample, HaarFirstMoment) {
    for (Eigen::Index d : {2, 3}) {
        for (std::size_t n : {1000u, 10000u, 100000u}) {
            const ParticleCloud cloud = sample(DensitySpec(gaussian(0, 0, 1, 1), HaarUniform{d}), n, 77 + n);
            const CMatrix err = mean_projector(cloud) - CMatrix::Identity(d, d) / static_cast<double>(d);
            EXPECT_LE(oracle::op_norm(err), 3.0 / std::sqrt(static_cast<double>(n))) << d << " " << n;
        }
    }
}

TEST(Sample, GaussianMean) {
    const std::size_t n = 100000;
    const ParticleCloud cloud = sample(DensitySpec(gaussian(1.0, -2.0, 0.3, 0.7), HaarUniform{2}), n, 5);
    double mq = 0.0, mp = 0.0;
    for (const auto& p : cloud) {
        mq += p.point.classical.q[0] / n;
        mp += p.point.classical.p[0] / n;
    }
    EXPECT_NEAR(mq, 1.0, 4.0 * 0.3 / std::sqrt(n));
    EXPECT_NEAR(mp, -2.0, 4.0 * 0.7 / std::sqrt(n));
}

TEST(Sample, QuadraticFormFirstMoment) {
    // The conditional first moment of <psi|f|psi> dHaar is (f + tr f I) / (d (d + 1)),
    // which for trace-d f is (f + d I) / (d (d + 1)).
    const DensitySpec spec(PointMassFactor{one(0.7), one(0.0)},
                           QuadraticForm{2, [](const ClassicalPoint&) {
                                             CMatrix m = CMatrix::Zero(2, 2);
                                             m(0, 0) = 1.8;
                                             m(1, 1) = 0.2;
                                             return HermitianOperator(m);
                                         }});
    const std::size_t n = 100000;
    const ParticleCloud cloud = sample(spec, n, 12);
    CMatrix f = CMatrix::Zero(2, 2);
    f(0, 0) = 1.8;
    f(1, 1) = 0.2;
    const CMatrix expected = (f + 2.0 * CMatrix::Identity(2, 2)) / 6.0;
    EXPECT_LE(oracle::op_norm(mean_projector(cloud) - expected), 3.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_LT((spec.conditional_state(ClassicalPoint(one(0.7), one(0.0))).matrix() - expected)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
}

TEST(Sample, Errors) {
    const DensitySpec spec(gaussian(0, 0, 1, 1), HaarUniform{2});
    EXPECT_THROW(sample(spec, 0, 1), InvalidArgument);
    EXPECT_THROW(DensitySpec(gaussian(0, 0, 0.0, 1), HaarUniform{2}), InvalidArgument);
    EXPECT_THROW(DensitySpec(gaussian(0, 0, 1, 1), PointMixture{{to_coordinates(oracle::ket({1.0, 0.0}))}, {0.5}}),
                 InvalidArgument);
    EXPECT_THROW(DensitySpec(gaussian(0, 0, 1, 1), QuadraticForm{2, [](const ClassicalPoint&) {
                                                                     return HermitianOperator(oracle::pauli_z());
                                                                 }}),
                 InvalidArgument);
}

TEST(Sample, SeededDeterminism) {
    const DensitySpec spec = quadratic_spec();
    const ParticleCloud a = sample(spec, 3000, 99);
    const ParticleCloud b = sample(spec, 3000, 99);
    const ParticleCloud c = sample(spec, 3000, 100);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].point.classical.q, b[i].point.classical.q);
        ASSERT_EQ(a[i].point.classical.p, b[i].point.classical.p);
        ASSERT_EQ(a[i].point.quantum.x(), b[i].point.quantum.x());
        ASSERT_EQ(a[i].point.quantum.y(), b[i].point.quantum.y());
        differs = differs || a[i].point.classical.q != c[i].point.classical.q;
    }
    EXPECT_TRUE(differs);
}

TEST(ParticleCloud, Validation) {
    const ParticleCloud empty({}, 0.0);
    EXPECT_TRUE(empty.empty());
    EXPECT_THROW(empty.classical_dof(), EmptyCloud);
    EXPECT_THROW(transport(empty, harmonic_only(), 1.0, 1e-3), EmptyCloud);
    const HybridPoint z{ClassicalPoint(one(0), one(0)), to_coordinates(oracle::ket({1.0, 0.0}))};
    EXPECT_THROW(ParticleCloud({{z, 0.4}, {z, 0.4}}, 0.0), InvalidArgument);
    EXPECT_NO_THROW(ParticleCloud({{z, 0.5}, {z, 0.5}}, 0.0));
}

TEST(Transport, ZeroTimeIsIdentity) {
    const ParticleCloud cloud = sample(DensitySpec(gaussian(1, 0, 0.2, 0.2), HaarUniform{2}), 200, 1);
    const ParticleCloud moved = transport(cloud, qubit_oscillator(), 0.0, 1e-3);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        EXPECT_EQ(moved[i].point.classical.q, cloud[i].point.classical.q);
        EXPECT_EQ(moved[i].point.quantum.x(), cloud[i].point.quantum.x());
    }
    EXPECT_EQ(moved.time(), cloud.time());
}

TEST(Transport, RotatesGaussianMoments) {
    const std::size_t n = 20000;
    const double sq = 0.3, sp = 0.6, t = 1.3;
    const ParticleCloud cloud = sample(DensitySpec(gaussian(1.0, 0.5, sq, sp), HaarUniform{2}), n, 8);
    const ParticleCloud moved = transport(cloud, harmonic_only(), t, 1e-3);
    EXPECT_DOUBLE_EQ(moved.time(), t);
    double mq = 0.0, mp = 0.0, vq = 0.0;
    for (const auto& p : moved) {
        mq += p.point.classical.q[0] / n;
        mp += p.point.classical.p[0] / n;
    }
    for (const auto& p : moved) vq += std::pow(p.point.classical.q[0] - mq, 2) / (n - 1);
    const double c = std::cos(t), s = std::sin(t);
    const double sigma_q = std::sqrt(sq * sq * c * c + sp * sp * s * s);
    const double sigma_p = std::sqrt(sq * sq * s * s + sp * sp * c * c);
    EXPECT_NEAR(mq, 1.0 * c + 0.5 * s, 4.0 * sigma_q / std::sqrt(n));
    EXPECT_NEAR(mp, -1.0 * s + 0.5 * c, 4.0 * sigma_p / std::sqrt(n));
    EXPECT_NEAR(vq, sigma_q * sigma_q, 4.0 * sigma_q * sigma_q * std::sqrt(2.0 / n));
}

TEST(Transport, ForwardBackwardAndWeights) {
    const ParticleCloud cloud = sample(DensitySpec(gaussian(1, 0, 0.2, 0.2), HaarUniform{2}), 500, 4);
    const auto h = qubit_oscillator();
    const TransportResult fwd = transport_with_diagnostics(cloud, h, 5.0, 1e-3);
    EXPECT_LT(fwd.drift.energy, 1e-7);
    EXPECT_NEAR(fwd.cloud.total_weight(), 1.0, 1e-9);
    const ParticleCloud back = transport(fwd.cloud, h, -5.0, 1e-3);
    EXPECT_NEAR(back.time(), 0.0, 1e-15);
    double worst = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        EXPECT_EQ(back[i].weight, cloud[i].weight);
        worst = std::max(worst, std::abs(back[i].point.classical.q[0] - cloud[i].point.classical.q[0]));
        worst = std::max(worst, std::abs(back[i].point.classical.p[0] - cloud[i].point.classical.p[0]));
        worst = std::max(worst, (back[i].point.quantum.x() - cloud[i].point.quantum.x()).cwiseAbs().maxCoeff());
        worst = std::max(worst, (back[i].point.quantum.y() - cloud[i].point.quantum.y()).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Transport, ReportsRejectedParticle) {
    const HybridHamiltonian stiff(1, nullptr, HermitianOperator::pauli_z() * 50.0, nullptr);
    const ParticleCloud cloud = sample(DensitySpec(gaussian(0, 0, 1, 1), HaarUniform{2}), 4, 1);
    try {
        transport(cloud, stiff, 10.0, 0.5);
        FAIL() << "expected StepRejected";
    } catch (const StepRejected& e) {
        EXPECT_TRUE(e.particle().has_value());
    }
}

double gaussian_pdf(double x, double mu, double s) {
    return std::exp(-0.5 * (x - mu) * (x - mu) / (s * s)) / (std::sqrt(2.0 * std::numbers::pi) * s);
}

TEST(Pullback, MatchesRotatedGaussian) {
    const double q0 = 0.8, p0 = -0.3, sq = 0.4, sp = 0.25, t = 2.1;
    const DensitySpec spec(gaussian(q0, p0, sq, sp), HaarUniform{2});
    const auto h = harmonic_only();
    std::mt19937_64 gen(21);
    std::normal_distribution<double> nd(0.0, 0.5);
    for (int i = 0; i < 10; ++i) {
        const double q = nd(gen), p = nd(gen);
        const HybridPoint z{ClassicalPoint(one(q), one(p)), to_coordinates(oracle::random_unit(2, gen))};
        // the harmonic flow is a rotation, so the source point is R(-t)(q, p)
        const double qs = q * std::cos(t) - p * std::sin(t);
        const double ps = q * std::sin(t) + p * std::cos(t);
        const double expected = gaussian_pdf(qs, q0, sq) * gaussian_pdf(ps, p0, sp);
        EXPECT_NEAR(pullback_density(spec, h, z, t, 1e-3), expected, 1e-6 * std::max(1.0, expected));
    }
    const HybridPoint z{ClassicalPoint(one(0.1), one(0.2)), to_coordinates(oracle::ket({1.0, 0.0}))};
    EXPECT_EQ(pullback_density(spec, h, z, 0.0, 1e-3), spec.evaluate(z));
}

TEST(Pullback, ConstantAlongCharacteristics) {
    const DensitySpec spec = quadratic_spec();
    const auto h = qubit_oscillator();
    const ParticleCloud cloud = sample(spec, 20, 6);
    const ParticleCloud moved = transport(cloud, h, 3.0, 1e-3);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double initial = spec.evaluate(cloud[i].point);
        EXPECT_NEAR(pullback_density(spec, h, moved[i].point, 3.0, 1e-3), initial, 1e-6 * std::max(1.0, initial));
    }
}

TEST(Quadraticity, Examples) {
    const DensitySpec spec = quadratic_spec();
    const ClassicalPoint cp(one(1.0), one(0.0));
    const double r0 = quadraticity_residual(spec, qubit_oscillator(), cp, 0.0, 64, 3);
    EXPECT_LT(r0, 1e-8);
    EXPECT_LT(quadraticity_residual(spec, harmonic_only(), cp, 5.0, 64, 3), 1e-6);
    EXPECT_GT(quadraticity_residual(spec, qubit_oscillator(), cp, 5.0, 64, 3), 10.0 * r0);
    EXPECT_THROW(quadraticity_residual(spec, harmonic_only(), cp, 1.0, 7, 3), InvalidArgument);
}

TEST(SameMomentPair, Examples) {
    const auto [haar, basis] = same_moment_pair(QuantumDensityMatrix::maximally_mixed(2), gaussian(1, 0, 0.2, 0.2));
    const std::size_t n = 100000;
    const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
    EXPECT_LE(oracle::op_norm(mean_projector(sample(haar, n, 1)) - half), 3.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_LE(oracle::op_norm(mean_projector(sample(basis, n, 1)) - half), 3.0 / std::sqrt(static_cast<double>(n)));

    const ClassicalPoint cp(one(1.0), one(0.0));
    EXPECT_LT((basis.conditional_state(cp).matrix() - half).cwiseAbs().maxCoeff(), 1e-15);
    const QuantumPoint plus = to_coordinates(oracle::ket({1.0, 1.0}) / std::sqrt(2.0));
    EXPECT_EQ(haar.quantum_density(cp, plus), 1.0);
    EXPECT_EQ(basis.quantum_density(cp, plus), 0.0);

    CMatrix pure = CMatrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    EXPECT_THROW(same_moment_pair(QuantumDensityMatrix(pure), gaussian(0, 0, 1, 1)), UnsupportedTarget);
}

}  // namespace
}  // namespace hqc

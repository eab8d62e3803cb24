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

#include <gtest/gtest.h>

#include "hybridqc/hamiltonian.hpp"
#include "oracles.hpp"

namespace hqc {
namespace {

RVector vec(std::initializer_list<double> v) {
    RVector r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) r[i++] = x;
    return r;
}

// H_c with a deliberately wrong momentum derivative.
class BrokenClassical final : public ClassicalHamiltonian {
public:
    double value(std::span<const double> q, std::span<const double> p) const override {
        return 0.5 * (q[0] * q[0] + p[0] * p[0]);
    }
    void gradient(std::span<const double> q, std::span<const double> p, std::span<double> d_dq,
                  std::span<double> d_dp) const override {
        d_dq[0] = q[0];
        d_dp[0] = 2.0 * p[0];
    }
    std::string kind() const override { return "broken"; }
};

// V = sin(q) p A with exact or wrong coefficient derivatives.
class SinCoupling final : public Interaction {
public:
    SinCoupling(HermitianOperator a, bool correct) : Interaction({std::move(a)}), correct_(correct) {}
    void coefficients(std::span<const double> q, std::span<const double> p, std::span<double> values,
                      std::span<double> d_dq, std::span<double> d_dp) const override {
        values[0] = std::sin(q[0]) * p[0];
        d_dq[0] = (correct_ ? std::cos(q[0]) : 1.0) * p[0];
        d_dp[0] = std::sin(q[0]);
    }
    std::string kind() const override { return "sin"; }

private:
    bool correct_;
};

TEST(ClassicalPoint, Validation) {
    EXPECT_THROW(ClassicalPoint(vec({1.0, 2.0}), vec({1.0})), DimensionMismatch);
    EXPECT_THROW(ClassicalPoint(vec({NAN}), vec({1.0})), InvalidArgument);
    EXPECT_EQ(ClassicalPoint(RVector(0), RVector(0)).dof(), 0);
}

TEST(ClassicalHamiltonians, ValuesAndGradients) {
    const HarmonicOscillator osc(2.0, 3.0);
    const std::vector<double> q{0.5, -1.0}, p{1.5, 0.25};
    // sum p^2/(2m) + m w^2 q^2 / 2
    const double expected = (1.5 * 1.5 + 0.25 * 0.25) / 4.0 + 9.0 * (0.25 + 1.0);
    EXPECT_NEAR(osc.value(q, p), expected, 1e-14);
    std::vector<double> gq(2), gp(2);
    osc.gradient(q, p, gq, gp);
    EXPECT_NEAR(gq[0], 18.0 * 0.5, 1e-14);
    EXPECT_NEAR(gp[1], 0.25 / 2.0, 1e-14);

    const FreeParticle free(0.5);
    EXPECT_NEAR(free.value(q, p), (1.5 * 1.5 + 0.25 * 0.25), 1e-14);

    // 1 + 2 q^3 and p^2 / 2
    const SeparablePolynomial poly({1.0, 0.0, 0.0, 2.0}, {0.0, 0.0, 0.5});
    const std::vector<double> q1{2.0}, p1{3.0};
    EXPECT_NEAR(poly.value(q1, p1), 1.0 + 16.0 + 4.5, 1e-14);
    std::vector<double> g1(1), g2(1);
    poly.gradient(q1, p1, g1, g2);
    EXPECT_NEAR(g1[0], 24.0, 1e-14);
    EXPECT_NEAR(g2[0], 3.0, 1e-14);

    EXPECT_THROW(HarmonicOscillator(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(FreeParticle(-1.0), InvalidArgument);
}

TEST(HybridHamiltonian, ConstructionChecks) {
    auto osc = std::make_shared<HarmonicOscillator>(1.0, 1.0);
    const HermitianOperator hq = HermitianOperator::pauli_z();
    EXPECT_THROW(HybridHamiltonian(1, osc, hq, nullptr, 0.0), InvalidArgument);
    EXPECT_THROW(HybridHamiltonian(1, osc, HermitianOperator(CMatrix::Identity(1, 1)), nullptr),
                 InvalidArgument);
    EXPECT_THROW(HybridHamiltonian(1, osc, hq,
                                   std::make_shared<LinearCoupling>(1.0, HermitianOperator::identity(3))),
                 DimensionMismatch);
    EXPECT_THROW(HybridHamiltonian(1, osc, hq,
                                   std::make_shared<LinearCoupling>(1.0, HermitianOperator::pauli_x(), 1)),
                 InvalidArgument);
    EXPECT_THROW(HybridHamiltonian(1, std::make_shared<BrokenClassical>(), hq, nullptr), InvalidArgument);
    EXPECT_THROW(HybridHamiltonian(1, osc, hq,
                                   std::make_shared<SinCoupling>(HermitianOperator::pauli_x(), false)),
                 InvalidArgument);
    EXPECT_NO_THROW(HybridHamiltonian(1, osc, hq,
                                      std::make_shared<SinCoupling>(HermitianOperator::pauli_x(), true)));
}

TEST(HybridHamiltonian, NullPartsDefaultToZero) {
    const HybridHamiltonian h(2, nullptr, HermitianOperator::pauli_z(), nullptr);
    EXPECT_FALSE(h.has_interaction());
    const ClassicalPoint cp(vec({1.0, 2.0}), vec({3.0, 4.0}));
    EXPECT_EQ(h.classical_energy(cp), 0.0);
    EXPECT_EQ(h.interaction_operator(cp).matrix(), CMatrix::Zero(2, 2));
}

TEST(HybridHamiltonian, InteractionOperatorAndGradients) {
    auto v = std::make_shared<LinearCoupling>(0.5, HermitianOperator::pauli_x(), 1);
    const HybridHamiltonian h(2, nullptr, HermitianOperator::pauli_z(), v);
    const ClassicalPoint cp(vec({0.3, -2.0}), vec({0.0, 0.0}));
    EXPECT_LT((h.interaction_operator(cp).matrix() - (-1.0) * oracle::pauli_x()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((h.interaction_gradient_q(cp, 1).matrix() - 0.5 * oracle::pauli_x()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(h.interaction_gradient_q(cp, 0).matrix(), CMatrix::Zero(2, 2));
    EXPECT_EQ(h.interaction_gradient_p(cp, 1).matrix(), CMatrix::Zero(2, 2));
    EXPECT_THROW(h.interaction_gradient_q(cp, 2), InvalidArgument);
    EXPECT_THROW(h.interaction_operator(ClassicalPoint(vec({1.0}), vec({1.0}))), DimensionMismatch);
}

TEST(HybridHamiltonian, PurelyQuantumSystem) {
    const HybridHamiltonian h(0, nullptr, HermitianOperator::pauli_z(), nullptr);
    EXPECT_EQ(h.classical_dof(), 0);
    EXPECT_EQ(h.classical_energy(ClassicalPoint(RVector(0), RVector(0))), 0.0);
}

}  // namespace
}  // namespace hqc

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

#include "hybridqc/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hqc {

namespace {

constexpr double kGradientStep = 1e-5;
constexpr double kGradientTolerance = 1e-6;

double polynomial(const std::vector<double>& coeffs, double v) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
    return acc;
}

double polynomial_derivative(const std::vector<double>& coeffs, double v) {
    double acc = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 1;) acc = acc * v + static_cast<double>(n) * coeffs[n];
    return acc;
}

void check_gradient(const char* what, double analytic, double numeric) {
    if (!(std::abs(analytic - numeric) <= kGradientTolerance * std::max(1.0, std::abs(analytic)))) {
        std::ostringstream os;
        os << what << " gradient inconsistent with finite differences: analytic " << analytic
           << ", numeric " << numeric;
        throw InvalidArgument(os.str());
    }
}

}  // namespace

ClassicalPoint::ClassicalPoint(RVector q_, RVector p_) : q(std::move(q_)), p(std::move(p_)) {
    if (q.size() != p.size()) {
        throw DimensionMismatch("classical momenta", static_cast<std::size_t>(q.size()),
                                static_cast<std::size_t>(p.size()));
    }
    if (!q.allFinite() || !p.allFinite()) throw InvalidArgument("classical point is not finite");
}

void ZeroClassical::gradient(std::span<const double>, std::span<const double>,
                             std::span<double> d_dq, std::span<double> d_dp) const {
    std::fill(d_dq.begin(), d_dq.end(), 0.0);
    std::fill(d_dp.begin(), d_dp.end(), 0.0);
}

HarmonicOscillator::HarmonicOscillator(double mass, double frequency)
    : mass_(mass), frequency_(frequency) {
    if (!(mass > 0.0)) throw InvalidArgument("oscillator mass must be positive");
}

double HarmonicOscillator::value(std::span<const double> q, std::span<const double> p) const {
    const double stiffness = mass_ * frequency_ * frequency_;
    double e = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        e += 0.5 * p[i] * p[i] / mass_ + 0.5 * stiffness * q[i] * q[i];
    }
    return e;
}

void HarmonicOscillator::gradient(std::span<const double> q, std::span<const double> p,
                                  std::span<double> d_dq, std::span<double> d_dp) const {
    const double stiffness = mass_ * frequency_ * frequency_;
    for (std::size_t i = 0; i < q.size(); ++i) {
        d_dq[i] = stiffness * q[i];
        d_dp[i] = p[i] / mass_;
    }
}

FreeParticle::FreeParticle(double mass) : mass_(mass) {
    if (!(mass > 0.0)) throw InvalidArgument("particle mass must be positive");
}

double FreeParticle::value(std::span<const double>, std::span<const double> p) const {
    double e = 0.0;
    for (double v : p) e += 0.5 * v * v / mass_;
    return e;
}

void FreeParticle::gradient(std::span<const double> q, std::span<const double> p,
                            std::span<double> d_dq, std::span<double> d_dp) const {
    for (std::size_t i = 0; i < q.size(); ++i) {
        d_dq[i] = 0.0;
        d_dp[i] = p[i] / mass_;
    }
}

SeparablePolynomial::SeparablePolynomial(std::vector<double> q_coefficients,
                                         std::vector<double> p_coefficients)
    : q_coefficients_(std::move(q_coefficients)), p_coefficients_(std::move(p_coefficients)) {}

double SeparablePolynomial::value(std::span<const double> q, std::span<const double> p) const {
    double e = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        e += polynomial(q_coefficients_, q[i]) + polynomial(p_coefficients_, p[i]);
    }
    return e;
}

void SeparablePolynomial::gradient(std::span<const double> q, std::span<const double> p,
                                   std::span<double> d_dq, std::span<double> d_dp) const {
    for (std::size_t i = 0; i < q.size(); ++i) {
        d_dq[i] = polynomial_derivative(q_coefficients_, q[i]);
        d_dp[i] = polynomial_derivative(p_coefficients_, p[i]);
    }
}

Interaction::Interaction(std::vector<HermitianOperator> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.dim() != terms_.front().dim()) {
            throw DimensionMismatch("interaction term", static_cast<std::size_t>(terms_.front().dim()),
                                    static_cast<std::size_t>(t.dim()));
        }
    }
}

LinearCoupling::LinearCoupling(double coupling, HermitianOperator op, Eigen::Index axis)
    : Interaction({std::move(op)}), coupling_(coupling), axis_(axis) {
    if (axis < 0) throw InvalidArgument("coupling axis must be non-negative");
}

void LinearCoupling::coefficients(std::span<const double> q, std::span<const double>,
                                  std::span<double> values, std::span<double> d_dq,
                                  std::span<double> d_dp) const {
    const auto axis = static_cast<std::size_t>(axis_);
    values[0] = coupling_ * q[axis];
    std::fill(d_dq.begin(), d_dq.end(), 0.0);
    std::fill(d_dp.begin(), d_dp.end(), 0.0);
    d_dq[axis] = coupling_;
}

HybridHamiltonian::HybridHamiltonian(Eigen::Index classical_dof,
                                     std::shared_ptr<const ClassicalHamiltonian> h_c,
                                     HermitianOperator h_q,
                                     std::shared_ptr<const Interaction> v_int, double hbar)
    : classical_dof_(classical_dof),
      h_c_(std::move(h_c)),
      h_q_(std::move(h_q)),
      v_int_(std::move(v_int)),
      hbar_(hbar) {
    if (classical_dof_ < 0) throw InvalidArgument("classical dof must be non-negative");
    if (!h_c_) h_c_ = std::make_shared<ZeroClassical>();
    if (!v_int_) v_int_ = std::make_shared<ZeroInteraction>();
    if (!(hbar_ > 0.0)) throw InvalidArgument("hbar must be positive");
    if (h_q_.dim() < 2) throw InvalidArgument("quantum dimension must be at least 2");
    for (const auto& t : v_int_->terms()) {
        if (t.dim() != h_q_.dim()) {
            throw DimensionMismatch("interaction term", static_cast<std::size_t>(h_q_.dim()),
                                    static_cast<std::size_t>(t.dim()));
        }
    }
    if (auto* lc = dynamic_cast<const LinearCoupling*>(v_int_.get());
        lc != nullptr && lc->axis() >= classical_dof_) {
        throw InvalidArgument("coupling axis exceeds classical dof");
    }
    validate_gradients();
}

void HybridHamiltonian::validate_gradients() const {
    const auto k = static_cast<std::size_t>(classical_dof_);
    if (k == 0) return;
    const std::size_t terms = v_int_->term_count();
    constexpr std::array<double, 5> samples{0.3, -0.7, 1.1, -1.6, 0.05};

    std::vector<double> q(k), p(k), gq(k), gp(k);
    std::vector<double> s(terms), sq(terms * k), sp(terms * k);
    std::vector<double> s_plus(terms), s_minus(terms), scratch_q(terms * k), scratch_p(terms * k);

    for (std::size_t trial = 0; trial < 3; ++trial) {
        for (std::size_t i = 0; i < k; ++i) {
            q[i] = samples[(trial + i) % samples.size()];
            p[i] = samples[(trial + 2 * i + 1) % samples.size()];
        }
        h_c_->gradient(q, p, gq, gp);
        v_int_->coefficients(q, p, s, sq, sp);
        for (std::size_t i = 0; i < k; ++i) {
            for (int axis = 0; axis < 2; ++axis) {
                auto& coord = axis == 0 ? q : p;
                const double saved = coord[i];
                coord[i] = saved + kGradientStep;
                const double e_plus = h_c_->value(q, p);
                v_int_->coefficients(q, p, s_plus, scratch_q, scratch_p);
                coord[i] = saved - kGradientStep;
                const double e_minus = h_c_->value(q, p);
                v_int_->coefficients(q, p, s_minus, scratch_q, scratch_p);
                coord[i] = saved;

                const double analytic_c = axis == 0 ? gq[i] : gp[i];
                check_gradient("H_c", analytic_c, (e_plus - e_minus) / (2 * kGradientStep));
                for (std::size_t m = 0; m < terms; ++m) {
                    const double analytic_v = axis == 0 ? sq[m * k + i] : sp[m * k + i];
                    check_gradient("V_int", analytic_v,
                                   (s_plus[m] - s_minus[m]) / (2 * kGradientStep));
                }
            }
        }
    }
}

double HybridHamiltonian::classical_energy(const ClassicalPoint& cp) const {
    if (cp.dof() != classical_dof_) {
        throw DimensionMismatch("classical point", static_cast<std::size_t>(classical_dof_),
                                static_cast<std::size_t>(cp.dof()));
    }
    return h_c_->value(as_span(cp.q), as_span(cp.p));
}

CMatrix HybridHamiltonian::interaction_matrix(std::span<const double> q,
                                              std::span<const double> p) const {
    const Eigen::Index d = quantum_dim();
    CMatrix v = CMatrix::Zero(d, d);
    const std::size_t terms = v_int_->term_count();
    if (terms == 0) return v;
    const auto k = static_cast<std::size_t>(classical_dof_);
    std::vector<double> s(terms), sq(terms * k), sp(terms * k);
    v_int_->coefficients(q, p, s, sq, sp);
    for (std::size_t m = 0; m < terms; ++m) v += s[m] * v_int_->terms()[m].matrix();
    return v;
}

HermitianOperator HybridHamiltonian::interaction_operator(const ClassicalPoint& cp) const {
    if (cp.dof() != classical_dof_) {
        throw DimensionMismatch("classical point", static_cast<std::size_t>(classical_dof_),
                                static_cast<std::size_t>(cp.dof()));
    }
    return HermitianOperator(interaction_matrix(as_span(cp.q), as_span(cp.p)));
}

namespace {

HermitianOperator interaction_gradient(const HybridHamiltonian& h, const ClassicalPoint& cp,
                                       Eigen::Index i, bool momentum) {
    const auto k = static_cast<std::size_t>(h.classical_dof());
    if (cp.dof() != h.classical_dof()) {
        throw DimensionMismatch("classical point", k, static_cast<std::size_t>(cp.dof()));
    }
    if (i < 0 || i >= h.classical_dof()) throw InvalidArgument("gradient index out of range");
    const Eigen::Index d = h.quantum_dim();
    CMatrix g = CMatrix::Zero(d, d);
    const std::size_t terms = h.interaction().term_count();
    if (terms == 0) return HermitianOperator(g);
    std::vector<double> s(terms), sq(terms * k), sp(terms * k);
    h.interaction().coefficients(as_span(cp.q), as_span(cp.p), s, sq, sp);
    const auto& grad = momentum ? sp : sq;
    for (std::size_t m = 0; m < terms; ++m) {
        g += grad[m * k + static_cast<std::size_t>(i)] * h.interaction().terms()[m].matrix();
    }
    return HermitianOperator(g);
}

}  // namespace

HermitianOperator HybridHamiltonian::interaction_gradient_q(const ClassicalPoint& cp,
                                                            Eigen::Index i) const {
    return interaction_gradient(*this, cp, i, false);
}

HermitianOperator HybridHamiltonian::interaction_gradient_p(const ClassicalPoint& cp,
                                                            Eigen::Index i) const {
    return interaction_gradient(*this, cp, i, true);
}

}  // namespace hqc

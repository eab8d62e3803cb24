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

#include "hybridqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hqc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_compatible(const HybridHamiltonian& h, const HybridPoint& z) {
    if (z.classical.dof() != h.classical_dof()) {
        throw DimensionMismatch("classical point", static_cast<std::size_t>(h.classical_dof()),
                                static_cast<std::size_t>(z.classical.dof()));
    }
    if (z.quantum.dim() != h.quantum_dim()) {
        throw DimensionMismatch("quantum point", static_cast<std::size_t>(h.quantum_dim()),
                                static_cast<std::size_t>(z.quantum.dim()));
    }
}

std::size_t step_count(double duration, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (duration == 0.0) return 0;
    return static_cast<std::size_t>(std::max<long long>(1, std::llround(std::abs(duration) / dt)));
}

}  // namespace

PhaseCoordinates PhaseCoordinates::of(const HybridPoint& z) {
    return {z.classical.q, z.classical.p, z.quantum.x(), z.quantum.y()};
}

double total_energy(const HybridHamiltonian& h, const HybridPoint& z) {
    require_compatible(h, z);
    const auto& cp = z.classical;
    const CMatrix gen = h.quantum().matrix() + h.interaction_matrix(as_span(cp.q), as_span(cp.p));
    const CVector c = z.quantum.state();
    return h.classical_energy(cp) + c.dot(gen * c).real();
}

ScalarField energy_field(const HybridHamiltonian& h) {
    return [&h](const PhaseCoordinates& u) {
        CVector c(u.x.size());
        for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = Complex(u.x[j], u.y[j]) / kSqrt2;
        const CMatrix gen = h.quantum().matrix() + h.interaction_matrix(as_span(u.q), as_span(u.p));
        return h.classical().value(as_span(u.q), as_span(u.p)) + c.dot(gen * c).real();
    };
}

double hybrid_poisson(const ScalarField& f1, const ScalarField& f2, const HybridPoint& z,
                      double hbar, double step) {
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    PhaseCoordinates u = PhaseCoordinates::of(z);

    auto partial = [&](const ScalarField& f, RVector& coord, Eigen::Index i) {
        const double saved = coord[i];
        coord[i] = saved + step;
        const double plus = f(u);
        coord[i] = saved - step;
        const double minus = f(u);
        coord[i] = saved;
        return (plus - minus) / (2.0 * step);
    };

    double classical = 0.0;
    for (Eigen::Index i = 0; i < u.q.size(); ++i) {
        classical += partial(f1, u.q, i) * partial(f2, u.p, i) -
                     partial(f2, u.q, i) * partial(f1, u.p, i);
    }
    double quantum = 0.0;
    for (Eigen::Index j = 0; j < u.x.size(); ++j) {
        quantum += partial(f1, u.x, j) * partial(f2, u.y, j) -
                   partial(f2, u.x, j) * partial(f1, u.y, j);
    }
    return classical + quantum / hbar;
}

PhaseState PhaseState::of(const HybridPoint& z) {
    return {z.classical.q, z.classical.p, z.quantum.state()};
}

HybridPoint PhaseState::to_point() const {
    return {ClassicalPoint(q, p), QuantumPoint::unchecked(kSqrt2 * c.real(), kSqrt2 * c.imag())};
}

namespace {

// Plain complex arithmetic; std::complex operator* carries NaN recovery that
// dominates the cost of the small products below.
inline Complex row_times(const Complex* row, const Complex* c, std::size_t d) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double ar = row[j].real();
        const double ai = row[j].imag();
        const double cr = c[j].real();
        const double ci = c[j].imag();
        re += ar * cr - ai * ci;
        im += ar * ci + ai * cr;
    }
    return {re, im};
}

// out = A c for a row-major complex d x d matrix; all arrays interleaved re, im.
inline void mat_vec(const double* a, const double* c, double* out, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) {
        double re = 0.0;
        double im = 0.0;
        const double* row = a + 2 * i * d;
        for (std::size_t j = 0; j < d; ++j) {
            re += row[2 * j] * c[2 * j] - row[2 * j + 1] * c[2 * j + 1];
            im += row[2 * j] * c[2 * j + 1] + row[2 * j + 1] * c[2 * j];
        }
        out[2 * i] = re;
        out[2 * i + 1] = im;
    }
}

// Re(conj(a) b)
inline double real_dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace

Propagator::Propagator(const HybridHamiltonian& h)
    : h_(&h),
      k_(static_cast<std::size_t>(h.classical_dof())),
      d_(static_cast<std::size_t>(h.quantum_dim())),
      terms_(h.interaction().term_count()),
      inv_hbar_(1.0 / h.hbar()) {
    hq_.resize(d_ * d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            hq_[i * d_ + j] = h.quantum().matrix()(static_cast<Eigen::Index>(i),
                                                    static_cast<Eigen::Index>(j));
    term_mats_.resize(terms_ * d_ * d_);
    for (std::size_t m = 0; m < terms_; ++m) {
        const CMatrix& a = h.interaction().terms()[m].matrix();
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j)
                term_mats_[(m * d_ + i) * d_ + j] =
                    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    generator_.resize(d_ * d_);
    work_.assign(4 * d_, 0.0);
    switch (d_) {
        case 2: eval_ = &Propagator::eval_impl<2>; break;
        case 3: eval_ = &Propagator::eval_impl<3>; break;
        case 4: eval_ = &Propagator::eval_impl<4>; break;
        default: eval_ = &Propagator::eval_impl<0>; break;
    }
    s_.resize(terms_);
    sq_.resize(terms_ * k_);
    sp_.resize(terms_ * k_);
    gq_.resize(k_);
    gp_.resize(k_);
    expect_.resize(terms_);
    const std::size_t n = 2 * k_ + 2 * d_;
    for (auto* v : {&y_, &carry_, &tmp_, &k1_, &k2_, &k3_, &k4_}) v->assign(n, 0.0);
}

void Propagator::build_generator(const double* q, const double* p) {
    std::copy(hq_.begin(), hq_.end(), generator_.begin());
    if (terms_ == 0) return;
    h_->interaction().coefficients({q, k_}, {p, k_}, s_, sq_, sp_);
    for (std::size_t m = 0; m < terms_; ++m) {
        const Complex* a = &term_mats_[m * d_ * d_];
        const double sm = s_[m];
        for (std::size_t e = 0; e < d_ * d_; ++e) generator_[e] += sm * a[e];
    }
}

template <std::size_t D>
void Propagator::eval_impl(const double* y, double* dy) {
    const std::size_t d = D > 0 ? D : d_;
    const double* q = y;
    const double* p = y + k_;
    const double* c = y + 2 * k_;  // interleaved re, im
    double* dq = dy;
    double* dp = dy + k_;
    double* dc = dy + 2 * k_;

    // w = (H_q + sum_m s_m A_m) c, accumulated term by term; A_m c also gives
    // the expectations entering the classical forces.
    double* w = work_.data();
    double* v = w + 2 * d;
    mat_vec(reinterpret_cast<const double*>(hq_.data()), c, w, d);
    if (terms_ > 0) {
        h_->interaction().coefficients({q, k_}, {p, k_}, s_, sq_, sp_);
        for (std::size_t m = 0; m < terms_; ++m) {
            mat_vec(reinterpret_cast<const double*>(&term_mats_[m * d * d]), c, v, d);
            double e = 0.0;
            const double sm = s_[m];
            for (std::size_t j = 0; j < 2 * d; ++j) {
                e += c[j] * v[j];
                w[j] += sm * v[j];
            }
            expect_[m] = e;
        }
    }
    // i hbar dc/dt = w
    for (std::size_t i = 0; i < d; ++i) {
        dc[2 * i] = w[2 * i + 1] * inv_hbar_;
        dc[2 * i + 1] = -w[2 * i] * inv_hbar_;
    }

    if (k_ == 0) return;
    h_->classical().gradient({q, k_}, {p, k_}, gq_, gp_);
    for (std::size_t i = 0; i < k_; ++i) {
        double force_q = gq_[i];
        double force_p = gp_[i];
        for (std::size_t m = 0; m < terms_; ++m) {
            force_q += sq_[m * k_ + i] * expect_[m];
            force_p += sp_[m * k_ + i] * expect_[m];
        }
        dq[i] = force_p;
        dp[i] = -force_q;
    }
}

double Propagator::energy_packed(const double* y) {
    const double* q = y;
    const double* p = y + k_;
    const auto* c = reinterpret_cast<const Complex*>(y + 2 * k_);
    build_generator(q, p);
    double e = h_->classical().value({q, k_}, {p, k_});
    for (std::size_t i = 0; i < d_; ++i) e += real_dot(c[i], row_times(&generator_[i * d_], c, d_));
    return e;
}

double Propagator::packed_norm() const {
    double n = 0.0;
    for (std::size_t j = 2 * k_; j < y_.size(); ++j) n += y_[j] * y_[j];
    return n;
}

void Propagator::load(const PhaseState& state) {
    if (static_cast<std::size_t>(state.q.size()) != k_ ||
        static_cast<std::size_t>(state.p.size()) != k_) {
        throw DimensionMismatch("classical state", k_, static_cast<std::size_t>(state.q.size()));
    }
    if (static_cast<std::size_t>(state.c.size()) != d_) {
        throw DimensionMismatch("quantum state", d_, static_cast<std::size_t>(state.c.size()));
    }
    std::copy_n(state.q.data(), k_, y_.data());
    std::copy_n(state.p.data(), k_, y_.data() + k_);
    std::copy_n(reinterpret_cast<const double*>(state.c.data()), 2 * d_, y_.data() + 2 * k_);
    std::fill(carry_.begin(), carry_.end(), 0.0);
}

void Propagator::store(PhaseState& state) const {
    std::copy_n(y_.data(), k_, state.q.data());
    std::copy_n(y_.data() + k_, k_, state.p.data());
    std::copy_n(y_.data() + 2 * k_, 2 * d_, reinterpret_cast<double*>(state.c.data()));
}

void Propagator::rk4_step(double h) {
    const std::size_t n = y_.size();
    eval(y_.data(), k1_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + 0.5 * h * k1_[i];
    eval(tmp_.data(), k2_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + 0.5 * h * k2_[i];
    eval(tmp_.data(), k3_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y_[i] + h * k3_[i];
    eval(tmp_.data(), k4_.data());
    // Compensated summation keeps round-off from accumulating over long runs.
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = w * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]) + carry_[i];
        const double next = y_[i] + delta;
        carry_[i] = delta - (next - y_[i]);
        y_[i] = next;
    }
}

DriftReport Propagator::advance(PhaseState& state, double duration, double dt) {
    return advance_observed(state, duration, dt, {});
}

DriftReport Propagator::advance_observed(
    PhaseState& state, double duration, double dt,
    const std::function<void(double, const PhaseState&, const DriftReport&)>& observer) {
    const std::size_t steps = step_count(duration, dt);
    load(state);
    DriftReport report;
    if (steps == 0) return report;

    const double h = duration / static_cast<double>(steps);
    const double e0 = energy_packed(y_.data());
    const double scale = std::max(1.0, std::abs(e0));
    for (std::size_t s = 1; s <= steps; ++s) {
        rk4_step(h);
        const double norm_drift = std::abs(packed_norm() - 1.0);
        report.norm = std::max(report.norm, norm_drift);
        report.steps = s;
        if (!(norm_drift <= kStepRejectNormDrift)) {
            throw StepRejected(h * static_cast<double>(s), norm_drift);
        }
        if (observer) {
            DriftReport current{std::abs(energy_packed(y_.data()) - e0) / scale, norm_drift, s};
            report.energy = std::max(report.energy, current.energy);
            store(state);
            observer(h * static_cast<double>(s), state, current);
        }
    }
    report.energy = std::max(report.energy, std::abs(energy_packed(y_.data()) - e0) / scale);
    store(state);
    return report;
}

double Propagator::energy(const PhaseState& state) {
    load(state);
    return energy_packed(y_.data());
}

void Propagator::derivative(const PhaseState& state, RVector& dq, RVector& dp, CVector& dc) {
    load(state);
    eval(y_.data(), k1_.data());
    dq = Eigen::Map<const RVector>(k1_.data(), static_cast<Eigen::Index>(k_));
    dp = Eigen::Map<const RVector>(k1_.data() + k_, static_cast<Eigen::Index>(k_));
    dc = Eigen::Map<const CVector>(reinterpret_cast<const Complex*>(k1_.data() + 2 * k_),
                                   static_cast<Eigen::Index>(d_));
}

Tangent vector_field(const HybridHamiltonian& h, const HybridPoint& z) {
    require_compatible(h, z);
    Propagator prop(h);
    RVector dq, dp;
    CVector dc;
    prop.derivative(PhaseState::of(z), dq, dp, dc);
    return {std::move(dq), std::move(dp), kSqrt2 * dc.real(), kSqrt2 * dc.imag()};
}

double Trajectory::max_energy_drift() const {
    return energy_drift.empty() ? 0.0 : *std::max_element(energy_drift.begin(), energy_drift.end());
}

double Trajectory::max_norm_drift() const {
    return norm_drift.empty() ? 0.0 : *std::max_element(norm_drift.begin(), norm_drift.end());
}

Trajectory integrate(const HybridHamiltonian& h, const HybridPoint& z0, double horizon, double dt,
                     std::size_t record_stride) {
    require_compatible(h, z0);
    if (!(horizon > 0.0)) throw InvalidArgument("integration horizon must be positive");
    if (!(dt > 0.0 && dt <= horizon)) throw InvalidArgument("dt must lie in (0, T]");
    record_stride = std::max<std::size_t>(1, record_stride);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.points.push_back(z0);
    traj.energy_drift.push_back(0.0);
    traj.norm_drift.push_back(std::abs(z0.quantum.norm() - 1.0));

    const std::size_t steps = step_count(horizon, dt);
    Propagator prop(h);
    PhaseState state = PhaseState::of(z0);
    prop.advance_observed(state, horizon, dt,
                          [&](double t, const PhaseState& s, const DriftReport& drift) {
                              if (drift.steps % record_stride != 0 && drift.steps != steps) return;
                              traj.times.push_back(t);
                              traj.points.push_back(s.to_point());
                              traj.energy_drift.push_back(drift.energy);
                              traj.norm_drift.push_back(drift.norm);
                          });
    return traj;
}

}  // namespace hqc

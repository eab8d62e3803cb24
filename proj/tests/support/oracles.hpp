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

// Reference computations used by the tests. Everything here is independent of
// the library's own numerics (its RNG, eigendecompositions and integrator).

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hybridqc/quantum_geometry.hpp"

namespace oracle {

using hqc::CMatrix;
using hqc::Complex;
using hqc::CVector;

inline CVector random_unit(Eigen::Index d, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    CVector c(d);
    for (Eigen::Index i = 0; i < d; ++i) c[i] = Complex(n(gen), n(gen));
    return c / c.norm();
}

inline CMatrix random_hermitian(Eigen::Index d, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(gen), n(gen));
    return 0.5 * (m + m.adjoint());
}

// exp(-i H t / hbar) by Pade scaling and squaring.
inline CMatrix propagator(const CMatrix& h, double t, double hbar = 1.0) {
    const CMatrix a = Complex(0.0, -t / hbar) * h;
    return a.exp();
}

inline double op_norm(const CMatrix& m) {
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

inline double trace_distance(const CMatrix& a, const CMatrix& b) {
    return 0.5 * Eigen::JacobiSVD<CMatrix>(a - b).singularValues().sum();
}

inline CMatrix pauli_x() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

inline CMatrix pauli_y() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

inline CMatrix pauli_z() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline CVector ket(std::initializer_list<Complex> entries) {
    CVector c(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (Complex e : entries) c[i++] = e;
    return c;
}

// Plain RK4 for the qubit-oscillator mean-field equations with
// H_c = (p^2 + q^2)/2, H_q = (w/2) sigma_z, V = g q sigma_x. State is
// (q, p, c0, c1); used to cross-check the library integrator.
struct QubitOscillator {
    double w = 1.0;
    double g = 0.5;

    struct State {
        double q, p;
        Complex c0, c1;
    };

    State deriv(const State& s) const {
        const Complex h0 = 0.5 * w * s.c0 + g * s.q * s.c1;
        const Complex h1 = -0.5 * w * s.c1 + g * s.q * s.c0;
        const double sx = 2.0 * (std::conj(s.c0) * s.c1).real();
        const Complex mi(0.0, -1.0);
        return {s.p, -s.q - g * sx, mi * h0, mi * h1};
    }

    State run(State s, double t, double dt) const {
        const auto steps = static_cast<long>(std::lround(t / dt));
        const double h = t / static_cast<double>(steps);
        auto axpy = [](const State& a, const State& k, double f) {
            return State{a.q + f * k.q, a.p + f * k.p, a.c0 + f * k.c0, a.c1 + f * k.c1};
        };
        for (long i = 0; i < steps; ++i) {
            const State k1 = deriv(s);
            const State k2 = deriv(axpy(s, k1, 0.5 * h));
            const State k3 = deriv(axpy(s, k2, 0.5 * h));
            const State k4 = deriv(axpy(s, k3, h));
            s.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
            s.p += h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
            s.c0 += h / 6.0 * (k1.c0 + 2.0 * k2.c0 + 2.0 * k3.c0 + k4.c0);
            s.c1 += h / 6.0 * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1);
        }
        return s;
    }
};

}  // namespace oracle

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

#include <complex>

#include <Eigen/Dense>

#include "hybridqc/errors.hpp"

namespace hqc {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-9;

// sum_j (x_j^2 + y_j^2) / 2, which equals |c|^2 under the chart.
double norm_function(const RVector& x, const RVector& y);

// Point of the quantum phase space in canonical real coordinates,
// x_j = sqrt(2) Re c_j and y_j = sqrt(2) Im c_j. Always on the unit-norm shell.
class QuantumPoint {
public:
    QuantumPoint(RVector x, RVector y);

    // Skips the shell check. The integrator uses this for states whose drift
    // it has already bounded.
    static QuantumPoint unchecked(RVector x, RVector y);

    const RVector& x() const { return x_; }
    const RVector& y() const { return y_; }
    Eigen::Index dim() const { return x_.size(); }
    double norm() const { return norm_function(x_, y_); }

    CVector state() const;

private:
    struct NoCheck {};
    QuantumPoint(NoCheck, RVector x, RVector y) : x_(std::move(x)), y_(std::move(y)) {}

    RVector x_;
    RVector y_;
};

QuantumPoint to_coordinates(const CVector& c);
CVector from_coordinates(const QuantumPoint& pt);

// Hermitian matrix in the computational basis. Construction validates
// Hermiticity; it never symmetrizes.
class HermitianOperator {
public:
    explicit HermitianOperator(CMatrix entries);

    static HermitianOperator zero(Eigen::Index d);
    static HermitianOperator identity(Eigen::Index d);
    static HermitianOperator pauli_x();
    static HermitianOperator pauli_y();
    static HermitianOperator pauli_z();

    const CMatrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator*(double scale) const;

private:
    CMatrix entries_;
};

// Trace-one positive semidefinite Hermitian matrix.
class QuantumDensityMatrix {
public:
    explicit QuantumDensityMatrix(CMatrix entries);

    static QuantumDensityMatrix maximally_mixed(Eigen::Index d);

    const CMatrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

    // Ascending.
    RVector eigenvalues() const;

private:
    CMatrix entries_;
};

// Largest deviation max_ij |A_ij - conj(A_ji)|.
double hermiticity_deviation(const CMatrix& m);

// <psi|A|psi>; the imaginary part is discarded (it vanishes for Hermitian A).
double expectation(const HermitianOperator& a, const QuantumPoint& pt);

QuantumDensityMatrix projector(const QuantumPoint& pt);

struct CoordinateGradient {
    RVector dx;
    RVector dy;
};

// Gradient of F = <psi|A|psi> in (x, y):
// dF/dx_j = sqrt(2) Re (A c)_j and dF/dy_j = sqrt(2) Im (A c)_j.
CoordinateGradient expectation_gradient(const HermitianOperator& a, const QuantumPoint& pt);

// Poisson bracket of the expectation functions of A and B at pt.
double quantum_poisson(const HermitianOperator& a, const HermitianOperator& b,
                       const QuantumPoint& pt, double hbar = 1.0);

}  // namespace hqc

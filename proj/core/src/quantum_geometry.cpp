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

#include "hybridqc/quantum_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hqc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_dim(const char* what, Eigen::Index expected, Eigen::Index actual) {
    if (expected != actual) {
        throw DimensionMismatch(what, static_cast<std::size_t>(expected),
                                static_cast<std::size_t>(actual));
    }
}

}  // namespace

double norm_function(const RVector& x, const RVector& y) {
    return 0.5 * (x.squaredNorm() + y.squaredNorm());
}

QuantumPoint::QuantumPoint(RVector x, RVector y) : x_(std::move(x)), y_(std::move(y)) {
    require_dim("quantum point y", x_.size(), y_.size());
    if (x_.size() < 2) {
        throw InvalidArgument("quantum dimension must be at least 2");
    }
    const double n = norm();
    if (!(std::abs(n - 1.0) <= kNormTolerance)) throw NonUnitVector(n);
}

QuantumPoint QuantumPoint::unchecked(RVector x, RVector y) {
    return QuantumPoint(NoCheck{}, std::move(x), std::move(y));
}

CVector QuantumPoint::state() const {
    CVector c(x_.size());
    for (Eigen::Index j = 0; j < x_.size(); ++j) c[j] = Complex(x_[j], y_[j]) / kSqrt2;
    return c;
}

QuantumPoint to_coordinates(const CVector& c) {
    const double n = c.squaredNorm();
    if (!(std::abs(n - 1.0) <= kNormTolerance)) throw NonUnitVector(n);
    return QuantumPoint(kSqrt2 * c.real(), kSqrt2 * c.imag());
}

CVector from_coordinates(const QuantumPoint& pt) { return pt.state(); }

double hermiticity_deviation(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
    require_dim("operator columns", entries_.rows(), entries_.cols());
    const double dev = hermiticity_deviation(entries_);
    if (!(dev <= kHermitianTolerance)) throw NotHermitian(dev);
}

HermitianOperator HermitianOperator::zero(Eigen::Index d) {
    return HermitianOperator(CMatrix::Zero(d, d));
}

HermitianOperator HermitianOperator::identity(Eigen::Index d) {
    return HermitianOperator(CMatrix::Identity(d, d));
}

HermitianOperator HermitianOperator::pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return HermitianOperator(m);
}

HermitianOperator HermitianOperator::pauli_y() {
    CMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return HermitianOperator(m);
}

HermitianOperator HermitianOperator::pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return HermitianOperator(m);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    require_dim("operator sum", dim(), other.dim());
    return HermitianOperator(entries_ + other.entries_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(entries_ * scale);
}

QuantumDensityMatrix::QuantumDensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
    require_dim("density matrix columns", entries_.rows(), entries_.cols());
    const double dev = hermiticity_deviation(entries_);
    if (!(dev <= kHermitianTolerance)) throw NotHermitian(dev);
    const double tr = entries_.trace().real();
    if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
        throw InvalidDensityMatrix("density matrix trace " + std::to_string(tr) + " is not 1");
    }
    const double min_eig = eigenvalues().minCoeff();
    if (!(min_eig >= -kPositivityTolerance)) {
        throw InvalidDensityMatrix("density matrix has negative eigenvalue " +
                                   std::to_string(min_eig));
    }
}

QuantumDensityMatrix QuantumDensityMatrix::maximally_mixed(Eigen::Index d) {
    return QuantumDensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

RVector QuantumDensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double expectation(const HermitianOperator& a, const QuantumPoint& pt) {
    require_dim("expectation", a.dim(), pt.dim());
    const CVector c = pt.state();
    return c.dot(a.matrix() * c).real();
}

QuantumDensityMatrix projector(const QuantumPoint& pt) {
    const double n = pt.norm();
    if (!(std::abs(n - 1.0) <= kNormTolerance)) throw NonUnitVector(n);
    const CVector c = pt.state();
    const Eigen::Index d = c.size();
    CMatrix p(d, d);
    // Upper triangle mirrored so the result is exactly Hermitian.
    for (Eigen::Index i = 0; i < d; ++i) {
        p(i, i) = std::norm(c[i]);
        for (Eigen::Index j = i + 1; j < d; ++j) {
            p(i, j) = c[i] * std::conj(c[j]);
            p(j, i) = std::conj(p(i, j));
        }
    }
    return QuantumDensityMatrix(std::move(p));
}

CoordinateGradient expectation_gradient(const HermitianOperator& a, const QuantumPoint& pt) {
    require_dim("expectation gradient", a.dim(), pt.dim());
    const CVector ac = a.matrix() * pt.state();
    return {kSqrt2 * ac.real(), kSqrt2 * ac.imag()};
}

double quantum_poisson(const HermitianOperator& a, const HermitianOperator& b,
                       const QuantumPoint& pt, double hbar) {
    require_dim("poisson bracket", a.dim(), b.dim());
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    const CoordinateGradient ga = expectation_gradient(a, pt);
    const CoordinateGradient gb = expectation_gradient(b, pt);
    return (ga.dx.dot(gb.dy) - gb.dx.dot(ga.dy)) / hbar;
}

}  // namespace hqc

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

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hybridqc/quantum_geometry.hpp"

namespace hqc {

// Point (q, p) of the classical phase space; k = 0 is allowed.
struct ClassicalPoint {
    RVector q;
    RVector p;

    ClassicalPoint() = default;
    ClassicalPoint(RVector q_, RVector p_);

    Eigen::Index dof() const { return q.size(); }
};

// Hamilton's function H_c(q, p) of the classical subsystem together with its
// exact gradient. Implementations must be reentrant.
class ClassicalHamiltonian {
public:
    virtual ~ClassicalHamiltonian() = default;

    virtual double value(std::span<const double> q, std::span<const double> p) const = 0;
    virtual void gradient(std::span<const double> q, std::span<const double> p,
                          std::span<double> d_dq, std::span<double> d_dp) const = 0;
    virtual std::string kind() const = 0;
};

class ZeroClassical final : public ClassicalHamiltonian {
public:
    double value(std::span<const double>, std::span<const double>) const override { return 0.0; }
    void gradient(std::span<const double> q, std::span<const double> p, std::span<double> d_dq,
                  std::span<double> d_dp) const override;
    std::string kind() const override { return "zero"; }
};

// sum_i p_i^2 / (2m) + m w^2 q_i^2 / 2
class HarmonicOscillator final : public ClassicalHamiltonian {
public:
    HarmonicOscillator(double mass, double frequency);

    double value(std::span<const double> q, std::span<const double> p) const override;
    void gradient(std::span<const double> q, std::span<const double> p, std::span<double> d_dq,
                  std::span<double> d_dp) const override;
    std::string kind() const override { return "harmonic"; }

    double mass() const { return mass_; }
    double frequency() const { return frequency_; }

private:
    double mass_;
    double frequency_;
};

// sum_i p_i^2 / (2m)
class FreeParticle final : public ClassicalHamiltonian {
public:
    explicit FreeParticle(double mass);

    double value(std::span<const double> q, std::span<const double> p) const override;
    void gradient(std::span<const double> q, std::span<const double> p, std::span<double> d_dq,
                  std::span<double> d_dp) const override;
    std::string kind() const override { return "free"; }

    double mass() const { return mass_; }

private:
    double mass_;
};

// sum_i ( sum_n a_n q_i^n + sum_n b_n p_i^n ), coefficients indexed by power.
class SeparablePolynomial final : public ClassicalHamiltonian {
public:
    SeparablePolynomial(std::vector<double> q_coefficients, std::vector<double> p_coefficients);

    double value(std::span<const double> q, std::span<const double> p) const override;
    void gradient(std::span<const double> q, std::span<const double> p, std::span<double> d_dq,
                  std::span<double> d_dp) const override;
    std::string kind() const override { return "polynomial"; }

    const std::vector<double>& q_coefficients() const { return q_coefficients_; }
    const std::vector<double>& p_coefficients() const { return p_coefficients_; }

private:
    std::vector<double> q_coefficients_;
    std::vector<double> p_coefficients_;
};

// Operator-valued interaction V(q, p) = sum_m s_m(q, p) A_m with fixed
// Hermitian A_m and scalar coefficient functions s_m.
class Interaction {
public:
    explicit Interaction(std::vector<HermitianOperator> terms);
    virtual ~Interaction() = default;

    const std::vector<HermitianOperator>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // values[m] = s_m; d_dq[m * k + i] = ds_m/dq_i; d_dp likewise.
    virtual void coefficients(std::span<const double> q, std::span<const double> p,
                              std::span<double> values, std::span<double> d_dq,
                              std::span<double> d_dp) const = 0;
    virtual std::string kind() const = 0;

private:
    std::vector<HermitianOperator> terms_;
};

class ZeroInteraction final : public Interaction {
public:
    ZeroInteraction() : Interaction({}) {}
    void coefficients(std::span<const double>, std::span<const double>, std::span<double>,
                      std::span<double>, std::span<double>) const override {}
    std::string kind() const override { return "zero"; }
};

// V = g q_axis A
class LinearCoupling final : public Interaction {
public:
    LinearCoupling(double coupling, HermitianOperator op, Eigen::Index axis = 0);

    void coefficients(std::span<const double> q, std::span<const double> p,
                      std::span<double> values, std::span<double> d_dq,
                      std::span<double> d_dp) const override;
    std::string kind() const override { return "linear_q"; }

    double coupling() const { return coupling_; }
    Eigen::Index axis() const { return axis_; }

private:
    double coupling_;
    Eigen::Index axis_;
};

// H_t = H_c(q, p) + <psi|H_q|psi> + <psi|V(q, p)|psi>.
//
// Construction checks the supplied classical gradients of H_c and of V against
// central differences at a fixed set of sample points.
class HybridHamiltonian {
public:
    HybridHamiltonian(Eigen::Index classical_dof, std::shared_ptr<const ClassicalHamiltonian> h_c,
                      HermitianOperator h_q, std::shared_ptr<const Interaction> v_int,
                      double hbar = 1.0);

    Eigen::Index classical_dof() const { return classical_dof_; }
    Eigen::Index quantum_dim() const { return h_q_.dim(); }
    double hbar() const { return hbar_; }

    const ClassicalHamiltonian& classical() const { return *h_c_; }
    const HermitianOperator& quantum() const { return h_q_; }
    const Interaction& interaction() const { return *v_int_; }
    bool has_interaction() const { return v_int_->term_count() > 0; }

    double classical_energy(const ClassicalPoint& cp) const;
    HermitianOperator interaction_operator(const ClassicalPoint& cp) const;
    HermitianOperator interaction_gradient_q(const ClassicalPoint& cp, Eigen::Index i) const;
    HermitianOperator interaction_gradient_p(const ClassicalPoint& cp, Eigen::Index i) const;

    // Interaction at (q, p) for raw coordinate vectors of length k.
    CMatrix interaction_matrix(std::span<const double> q, std::span<const double> p) const;

private:
    void validate_gradients() const;

    Eigen::Index classical_dof_;
    std::shared_ptr<const ClassicalHamiltonian> h_c_;
    HermitianOperator h_q_;
    std::shared_ptr<const Interaction> v_int_;
    double hbar_;
};

inline std::span<const double> as_span(const RVector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace hqc

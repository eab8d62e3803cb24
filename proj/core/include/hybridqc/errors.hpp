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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hqc {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonUnitVector : public Error {
public:
    explicit NonUnitVector(double norm);
    double norm() const { return norm_; }

private:
    double norm_;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::string what, std::size_t expected, std::size_t actual);
};

class NotHermitian : public Error {
public:
    explicit NotHermitian(double deviation);
};

class InvalidDensityMatrix : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Raised by the integrator when the quantum norm drifts past the rejection
// threshold; carries the particle index when raised from an ensemble transport.
class StepRejected : public Error {
public:
    StepRejected(double time, double norm_drift, std::optional<std::size_t> particle = std::nullopt);
    double time() const { return time_; }
    double norm_drift() const { return norm_drift_; }
    std::optional<std::size_t> particle() const { return particle_; }

private:
    double time_;
    double norm_drift_;
    std::optional<std::size_t> particle_;
};

class RejectionStall : public Error {
public:
    explicit RejectionStall(double acceptance_rate);
};

class UnsupportedTarget : public Error {
public:
    using Error::Error;
};

class LowMass : public Error {
public:
    LowMass(std::size_t cell, double mass, double floor);
};

class EmptyCloud : public Error {
public:
    EmptyCloud();
};

class UnsupportedHamiltonian : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    ConfigInvalid(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace hqc

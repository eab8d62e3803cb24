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

#include "hybridqc/errors.hpp"

#include <sstream>

namespace hqc {

namespace {

std::string describe(const char* prefix, double value) {
    std::ostringstream os;
    os << prefix << value;
    return os.str();
}

}  // namespace

NonUnitVector::NonUnitVector(double norm)
    : Error(describe("state vector is not unit norm: |c|^2 = ", norm)), norm_(norm) {}

DimensionMismatch::DimensionMismatch(std::string what, std::size_t expected, std::size_t actual)
    : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
            std::to_string(actual)) {}

NotHermitian::NotHermitian(double deviation)
    : Error(describe("matrix is not Hermitian, max |A - A^H| = ", deviation)) {}

StepRejected::StepRejected(double time, double norm_drift, std::optional<std::size_t> particle)
    : Error([&] {
          std::ostringstream os;
          os << "integration step rejected at t = " << time << ": norm drift " << norm_drift
             << " exceeds limit (reduce dt)";
          if (particle) os << " [particle " << *particle << "]";
          return os.str();
      }()),
      time_(time),
      norm_drift_(norm_drift),
      particle_(particle) {}

RejectionStall::RejectionStall(double acceptance_rate)
    : Error(describe("rejection sampler stalled, acceptance rate ", acceptance_rate)) {}

LowMass::LowMass(std::size_t cell, double mass, double floor)
    : Error([&] {
          std::ostringstream os;
          os << "cell " << cell << " holds mass " << mass << " below floor " << floor;
          return os.str();
      }()) {}

EmptyCloud::EmptyCloud() : Error("particle cloud is empty") {}

ConfigInvalid::ConfigInvalid(std::string field, const std::string& message)
    : Error("config field '" + field + "': " + message), field_(std::move(field)) {}

}  // namespace hqc

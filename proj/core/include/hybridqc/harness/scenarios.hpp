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

#include <string>
#include <vector>

#include "hybridqc/harness/config.hpp"

namespace hqc::harness {

// Built-in copies of the files under scenarios/.
//   decoupled_qubit           oscillator + qubit, no interaction, Gaussian x Haar
//   frozen_classical          H_c = 0, V = g q sigma_x, qubit starts in |0>
//   qubit_oscillator          oscillator + qubit, V = g q sigma_x
//   qubit_oscillator_compare  same, Haar vs basis mixture with equal first moment
ScenarioConfig bundled_scenario(const std::string& name);
std::vector<std::string> bundled_scenario_names();

}  // namespace hqc::harness

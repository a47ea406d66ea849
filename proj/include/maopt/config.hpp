// SPDX-License-Identifier: Apache-2.0
//
// maopt: channel estimation, position selection and beamforming for
// multiuser wideband movable-antenna systems
// Copyright (C) 2026 The maopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MAOPT_CONFIG_HPP
#define MAOPT_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "maopt/experiments.hpp"

namespace maopt {

/// Any problem with a config document. The message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ConfigUse { Scenario, Sweep };

/// Parses a flat JSON config. Scenario keys are always required; the sweep
/// keys (sweep_axis, sweep_values, trials, base_seed) only for ConfigUse::Sweep.
/// Unknown keys are rejected so typos do not silently fall back to defaults.
ExperimentConfig parse_config(const std::string& text, ConfigUse use);

std::string config_to_json(const ExperimentConfig& cfg);

} // namespace maopt

#endif

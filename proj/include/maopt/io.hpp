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

#ifndef MAOPT_IO_HPP
#define MAOPT_IO_HPP

#include "maopt/beamforming.hpp"
#include "maopt/channel_estimation.hpp"
#include "maopt/position_selection.hpp"
#include "maopt/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace maopt::io {

namespace fs = std::filesystem;

// Complex arrays are stored as little-endian float64 pairs (re, im). Tensors
// are laid out [n][k][q] and solutions [m][k][q], with q fastest.

void write_complex_array(const fs::path& path, std::span<const cd> values);
std::vector<cd> read_complex_array(const fs::path& path);

struct TensorFiles {
    fs::path data;    // .bin
    fs::path sidecar; // .json
};

/// Writes <stem>.bin and <stem>.json with sidecar {n, k, nc, seed}.
TensorFiles save_tensor(const fs::path& stem, const ChannelTensor& tensor, std::uint64_t seed);
ChannelTensor load_tensor(const fs::path& stem);

struct SolutionInfo {
    double transmit_power = 0.0;
    double noise_power = 0.0;
    std::string scheme;
    int iterations = 0;
};

/// Writes <stem>.bin and <stem>.json with sidecar {m, k, nc, pt, sigma2, scheme, iterations}.
TensorFiles save_solution(const fs::path& stem, const BeamformingSolution& solution, const SolutionInfo& info);
BeamformingSolution load_solution(const fs::path& stem, SolutionInfo* info = nullptr);

/// JSON list of 1-based indices.
std::string index_list_json(std::span<const int> zero_based);
std::vector<int> parse_index_list(const std::string& text);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

/// `dir/name + ext` if free, otherwise the first free `dir/name-<i> + ext`.
/// With several extensions the same stem must be free for all of them.
fs::path unique_stem(const fs::path& dir, const std::string& name, std::span<const std::string> extensions);

} // namespace maopt::io

#endif

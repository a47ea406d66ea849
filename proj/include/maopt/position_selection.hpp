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

#ifndef MAOPT_POSITION_SELECTION_HPP
#define MAOPT_POSITION_SELECTION_HPP

#include "maopt/equivalent_channel.hpp"
#include "maopt/linalg.hpp"
#include "maopt/rng.hpp"
#include "maopt/scenario.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace maopt {

/// Antenna m sits at grid position positions[m] (0-based). Entries are distinct.
class PositionAssignment {
public:
    PositionAssignment() = default;
    explicit PositionAssignment(std::vector<int> positions);

    int num_antennas() const { return static_cast<int>(positions_.size()); }
    int operator[](int m) const { return positions_[static_cast<std::size_t>(m)]; }
    std::span<const int> positions() const { return positions_; }

    /// Throws std::invalid_argument unless every entry is in [0, num_positions) and distinct.
    void validate(int num_positions) const;

    /// N x M 0/1 matrix with a single one per column.
    RMatrix selection_matrix(int num_positions) const;

    bool operator==(const PositionAssignment&) const = default;

private:
    std::vector<int> positions_;
};

EquivalentChannel apply_assignment(const ChannelTensor& tensor, const PositionAssignment& assignment);

/// Column-by-column argmax over rows not yet taken; ties go to the lowest row.
PositionAssignment sequential_unique_assign(const RMatrix& scores);

PositionAssignment random_select(Rng& rng, int num_positions, int num_antennas);

/// Scores a (possibly partial) set of positions on a channel tensor.
using RateOracle = std::function<double(const ChannelTensor&, std::span<const int>)>;

/// Sum rate of ZF beamforming on the given subcarriers (0-based).
RateOracle make_zf_oracle(double transmit_power, double noise_power, std::vector<int> subcarriers);

/// `count` subcarriers spread evenly over 0..num_subcarriers-1.
std::vector<int> evenly_spaced_subcarriers(int num_subcarriers, int count);

struct SelectionResult {
    PositionAssignment assignment;
    double rate = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = 100'000;

std::uint64_t binomial(int n, int k);

/// Best M-subset by enumeration, returned in ascending order. Refuses when
/// C(N, M) exceeds `limit`.
SelectionResult exhaustive_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle,
                                  std::uint64_t limit = kDefaultEnumerationLimit);

/// Adds one position at a time, each maximizing the oracle on the enlarged set.
SelectionResult greedy_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle);

struct CeoParams {
    int samples = 64;
    double elite_fraction = 0.2;
    double smoothing = 0.7;
    int iterations = 20;

    void validate() const;
};

struct CeoIteration {
    double best_rate = 0.0; // best rate seen so far
    std::vector<double> weights;
};

struct CeoResult {
    PositionAssignment assignment;
    double rate = 0.0;
    std::vector<CeoIteration> trace; // entry 0 holds the initial weights
};

CeoResult ceo_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle, const CeoParams& params,
                     Rng& rng);

/// Per-iteration best rate and weights, one row per iteration.
std::string ceo_trace_csv(const CeoResult& result);

} // namespace maopt

#endif

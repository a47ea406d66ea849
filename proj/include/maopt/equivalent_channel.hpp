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

#ifndef MAOPT_EQUIVALENT_CHANNEL_HPP
#define MAOPT_EQUIVALENT_CHANNEL_HPP

#include "maopt/linalg.hpp"

#include <span>
#include <vector>

namespace maopt {

// h_equ^T[k, q] for every subcarrier, stored as one K x M matrix per subcarrier.
class EquivalentChannel {
public:
    EquivalentChannel() = default;
    explicit EquivalentChannel(std::vector<CMatrix> per_subcarrier);

    int num_users() const { return per_q_.empty() ? 0 : static_cast<int>(per_q_.front().rows()); }
    int num_antennas() const { return per_q_.empty() ? 0 : static_cast<int>(per_q_.front().cols()); }
    int num_subcarriers() const { return static_cast<int>(per_q_.size()); }

    const CMatrix& subcarrier(int q) const { return per_q_[static_cast<std::size_t>(q)]; }
    CMatrix& subcarrier(int q) { return per_q_[static_cast<std::size_t>(q)]; }
    cd operator()(int k, int q, int m) const { return per_q_[static_cast<std::size_t>(q)](k, m); }

    /// Same channel restricted to the listed subcarriers.
    EquivalentChannel restrict_to(std::span<const int> subcarriers) const;

private:
    std::vector<CMatrix> per_q_;
};

} // namespace maopt

#endif

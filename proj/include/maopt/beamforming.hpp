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

#ifndef MAOPT_BEAMFORMING_HPP
#define MAOPT_BEAMFORMING_HPP

#include "maopt/equivalent_channel.hpp"
#include "maopt/linalg.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace maopt {

// Which terms enter the denominators of the u and v updates. The standard
// receiver sums interference over all users including the intended one and
// gives v = 1 + SINR. The excluding-k form gives v = 1 / (1 - SINR), which is
// negative whenever SINR > 1; it is kept only for comparison runs.
enum class WmmseVariant { StandardAllTerms, StrictExcludingK };

std::string_view to_string(WmmseVariant variant);
WmmseVariant wmmse_variant_from_string(std::string_view name);

struct BeamformerConfig {
    double transmit_power = 10.0;
    double noise_power = 1.0;
    int max_iterations = 1000;
    double rate_tolerance = 1e-10; // bits
    WmmseVariant variant = WmmseVariant::StandardAllTerms;

    void validate() const;
};

/// W[q] (M x K, column k serves user k) for every subcarrier.
struct BeamformingSolution {
    std::vector<CMatrix> matrices;
    bool regularized = false; // set when ZF had to load a rank-deficient channel

    int num_subcarriers() const { return static_cast<int>(matrices.size()); }
};

double sinr(const EquivalentChannel& equiv, const BeamformingSolution& solution, int k, int q, double noise_power);

/// Average over subcarriers of the summed per-user log2(1 + SINR).
double sum_rate(const EquivalentChannel& equiv, const BeamformingSolution& solution, double noise_power);

/// Rate contribution of a single subcarrier (not divided by Nc).
double subcarrier_rate(const CMatrix& channel, const CMatrix& w, double noise_power);

/// Rescales every W[q] to squared Frobenius norm `transmit_power`.
void normalize_power(BeamformingSolution& solution, double transmit_power);

BeamformingSolution zf(const EquivalentChannel& equiv, double transmit_power);

/// Matched beams conj(h_k) with equal per-user power.
BeamformingSolution mrt(const EquivalentChannel& equiv, double transmit_power);

struct WmmseState {
    CMatrix u;  // K x Nc
    RMatrix v;  // K x Nc
    RVector mu; // Nc
    std::vector<double> rate_trace; // rate of the initial point, then after every iteration
    int iterations = 0;
};

struct ReceiverUpdate {
    CMatrix u; // K x Nc
    RMatrix v; // K x Nc
};

/// u and v updates for the current beamformers.
ReceiverUpdate update_receivers(const EquivalentChannel& equiv, const BeamformingSolution& solution,
                                double noise_power, WmmseVariant variant);

/// Beamformer update for fixed (u, v): the multiplier of each subcarrier is
/// found by bisection and W[q] is then scaled to the power constraint.
/// Returns the multipliers.
RVector update_beamformers(const EquivalentChannel& equiv, const ReceiverUpdate& receivers, double transmit_power,
                           BeamformingSolution& solution);

std::pair<BeamformingSolution, WmmseState> wmmse(const EquivalentChannel& equiv, const BeamformerConfig& cfg,
                                                 const BeamformingSolution& init);

/// WMMSE started from MRT.
std::pair<BeamformingSolution, WmmseState> wmmse(const EquivalentChannel& equiv, const BeamformerConfig& cfg);

// w[k,q] = (b[q] I + sum_p c[p,q] g g^H)^-1 a[k,q] g[k,q] with g = conj(h_equ[k,q]),
// followed by a Frobenius rescale of W[q].
struct ParametricBeamformer {
    CMatrix a; // K x Nc
    RVector b; // Nc
    RMatrix c; // K x Nc
};

BeamformingSolution build_parametric_w(const ParametricBeamformer& params, const EquivalentChannel& equiv,
                                       double transmit_power);

ParametricBeamformer extract_params(const WmmseState& state);

/// Coordinate-wise ascent on the sum rate over (Re a, Im a, log c, log b)
/// using central differences. Subcarriers are refined independently and each
/// gets `budget` rate evaluations. Never returns a worse point.
ParametricBeamformer refine_params(const ParametricBeamformer& params, const EquivalentChannel& equiv,
                                   const BeamformerConfig& cfg, int budget);

} // namespace maopt

#endif

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

#ifndef MAOPT_CHANNEL_ESTIMATION_HPP
#define MAOPT_CHANNEL_ESTIMATION_HPP

#include "maopt/linalg.hpp"
#include "maopt/rng.hpp"
#include "maopt/scenario.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maopt {

enum class PatternKind { UpaSubgrid, UniformRandom, RowBand, Cross };

std::string_view to_string(PatternKind kind);
PatternKind pattern_kind_from_string(std::string_view name);

/// Positions visited by the single probing antenna. Indices are 0-based and
/// sorted ascending.
struct CePattern {
    PatternKind kind = PatternKind::UpaSubgrid;
    std::vector<int> indices;

    int size() const { return static_cast<int>(indices.size()); }
};

CePattern build_ce_pattern(const PositionGrid& grid, int num_probes, PatternKind kind, Rng& rng);

struct PilotConfig {
    double pilot_power = 1.0;
    double noise_power = 0.1;

    void validate() const;
};

struct PilotObservations {
    std::vector<CMatrix> per_user; // J x Nc each
};

PilotObservations synthesize_pilots(const ChannelTensor& tensor, const CePattern& pattern, const PilotConfig& cfg,
                                    Rng& rng);

// Steering vectors over a uniform G x G grid of virtual directions.
// Column g corresponds to (g1, g2) = (g / G, g % G), both 0-based, with
// theta = -1 + 2 (g1 + 1) / G and phi = -1 + 2 (g2 + 1) / G.
class Dictionary {
public:
    Dictionary(const PositionGrid& grid, int grid_size, double wavelength);

    int grid_size() const { return g_; }
    int num_atoms() const { return g_ * g_; }
    const CMatrix& atoms() const { return atoms_; }

    std::pair<int, int> grid_pair(int atom) const { return {atom / g_, atom % g_}; }
    int atom_index(int g1, int g2) const { return g1 * g_ + g2; }
    double theta_at(int g1) const { return -1.0 + 2.0 * (g1 + 1) / g_; }
    double phi_at(int g2) const { return -1.0 + 2.0 * (g2 + 1) / g_; }
    std::pair<double, double> direction(int atom) const;

    /// Atoms whose elevation direction phi is positive, the only ones a path
    /// with elevation in (-pi/2, pi/2) can produce.
    std::vector<char> forward_atoms() const;

    /// Steering vector a(theta, phi) over every grid position.
    CVector steering(double theta, double phi) const;

    /// Rows of the dictionary at the probed positions.
    CMatrix sensing(const CePattern& pattern) const;

private:
    PositionGrid grid_;
    int g_ = 0;
    double wavelength_ = 0.0;
    CMatrix atoms_;
};

Dictionary build_dictionary(const PositionGrid& grid, int grid_size, double wavelength);

struct SompResult {
    std::vector<int> support;          // in selection order
    CMatrix coefficients;              // |support| x Nc
    std::vector<double> residual_norms; // Frobenius norm before iteration 1 and after each iteration
};

/// Simultaneous OMP with one support shared by all columns of `observations`.
/// When `admissible` is non-empty only atoms flagged there are candidates.
SompResult somp(const CMatrix& observations, const CMatrix& sensing, int num_paths,
                std::span<const char> admissible = {});

struct SparseEstimate {
    std::vector<int> support;
    std::vector<std::pair<double, double>> angle_estimates; // (theta, phi) per support entry
    CMatrix reconstructed_steering;                         // N x L
    CMatrix coefficients;                                   // L x Nc
    CMatrix initial_csi;                                    // N x Nc, still scaled by sqrt(P)
};

SparseEstimate ls_refit(std::span<const int> support, const Dictionary& dictionary, const CePattern& pattern,
                        const CMatrix& observations);

/// Stacks per-user estimates into an N x K x Nc tensor divided by sqrt(P).
ChannelTensor assemble_initial_csi(std::span<const SparseEstimate> estimates, double pilot_power);

/// Normalized squared error of one realization; throws on an all-zero truth.
double nmse(const ChannelTensor& estimate, const ChannelTensor& truth);

struct EstimatorConfig {
    int num_paths = 6;        // paths assumed by the estimator
    bool forward_only = true; // restrict the support search to Dictionary::forward_atoms()
};

/// Full per-user pipeline: SOMP support search followed by the LS refit.
ChannelTensor estimate_channel(const PilotObservations& pilots, const Dictionary& dictionary,
                               const CePattern& pattern, const PilotConfig& pilot_cfg, const EstimatorConfig& cfg,
                               std::vector<SparseEstimate>* estimates = nullptr);

} // namespace maopt

#endif

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

#ifndef MAOPT_SCENARIO_HPP
#define MAOPT_SCENARIO_HPP

#include "maopt/linalg.hpp"
#include "maopt/rng.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace maopt {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.14159265358979323846;

struct OfdmConfig {
    double carrier_frequency = 30e9; // Hz
    double bandwidth = 30e6;         // Hz
    int num_subcarriers = 32;

    double wavelength() const { return kSpeedOfLight / carrier_frequency; }
    void validate() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Rectangular lattice of candidate antenna positions. Index n = i2 * n1 + i1
// (0-based), i.e. the azimuth index runs fastest.
class PositionGrid {
public:
    PositionGrid() = default;
    PositionGrid(int n1, int n2, double spacing);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int size() const { return n1_ * n2_; }
    double spacing() const { return spacing_; }

    const Point& operator[](int n) const { return points_[static_cast<std::size_t>(n)]; }
    std::span<const Point> points() const { return points_; }

    int index(int i1, int i2) const { return i2 * n1_ + i1; }

private:
    int n1_ = 0;
    int n2_ = 0;
    double spacing_ = 0.0;
    std::vector<Point> points_;
};

PositionGrid build_grid(int n1, int n2, double spacing);

/// One multipath component. theta/phi are the virtual directions
/// sin(elev) cos(azim) and cos(elev).
struct PathComponent {
    double elevation_aod = 0.0;
    double azimuth_aod = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double delay = 0.0;
    cd gain{0.0, 0.0};

    static PathComponent from_angles(double elevation, double azimuth, double delay, cd gain);
    /// Rebuilds a component from virtual directions; angles are recovered on
    /// the branch with non-negative azimuth.
    static PathComponent from_virtual(double theta, double phi, double delay, cd gain);
};

struct UserChannel {
    std::vector<PathComponent> paths;
};

// Complex gains between every candidate position, user and subcarrier.
// Stored per user as an N x Nc matrix so that values(n, k, q) = user(k)(n, q).
class ChannelTensor {
public:
    ChannelTensor() = default;
    ChannelTensor(int num_positions, int num_users, int num_subcarriers);

    int num_positions() const { return n_; }
    int num_users() const { return k_; }
    int num_subcarriers() const { return nc_; }

    cd& operator()(int n, int k, int q) { return users_[static_cast<std::size_t>(k)](n, q); }
    cd operator()(int n, int k, int q) const { return users_[static_cast<std::size_t>(k)](n, q); }

    CMatrix& user(int k) { return users_[static_cast<std::size_t>(k)]; }
    const CMatrix& user(int k) const { return users_[static_cast<std::size_t>(k)]; }

    /// N x K matrix of the q-th subcarrier.
    CMatrix subcarrier(int q) const;

    double squared_norm() const;
    bool all_finite() const;
    bool same_shape(const ChannelTensor& other) const
    {
        return n_ == other.n_ && k_ == other.k_ && nc_ == other.nc_;
    }

private:
    int n_ = 0;
    int k_ = 0;
    int nc_ = 0;
    std::vector<CMatrix> users_;
};

/// Draws L paths: AoDs iid U(-pi/2, pi/2), gains CN(0, 1/L), delays U[0, 8/B_s].
UserChannel sample_user_channel(Rng& rng, int num_paths, double bandwidth);

/// Channel between a user and one position on subcarrier q, with q in 1..N_c.
cd channel_coeff(const UserChannel& user, const Point& position, int subcarrier, const OfdmConfig& cfg);

ChannelTensor build_channel_tensor(std::span<const UserChannel> users, const PositionGrid& grid,
                                   const OfdmConfig& cfg);

struct Scenario {
    OfdmConfig ofdm;
    PositionGrid grid;
    std::vector<UserChannel> users;

    ChannelTensor tensor() const { return build_channel_tensor(users, grid, ofdm); }
};

struct ScenarioParams {
    OfdmConfig ofdm;
    int n1 = 8;
    int n2 = 8;
    double spacing = 0.0; // <= 0 selects half a wavelength
    int num_users = 4;
    int num_paths = 6;
};

Scenario sample_scenario(const ScenarioParams& params, Rng& rng);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

} // namespace maopt

#endif

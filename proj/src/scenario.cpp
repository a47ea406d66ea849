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

#include "maopt/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maopt {

void OfdmConfig::validate() const
{
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        throw std::invalid_argument("carrier frequency must be positive");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw std::invalid_argument("bandwidth must be positive");
    if (num_subcarriers < 1)
        throw std::invalid_argument("number of subcarriers must be at least 1");
}

PositionGrid::PositionGrid(int n1, int n2, double spacing) : n1_(n1), n2_(n2), spacing_(spacing)
{
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("grid dimensions must be at least 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("grid spacing must be positive");
    points_.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
    for (int i2 = 0; i2 < n2; ++i2)
        for (int i1 = 0; i1 < n1; ++i1)
            points_.push_back({i1 * spacing, i2 * spacing});
}

PositionGrid build_grid(int n1, int n2, double spacing)
{
    return PositionGrid(n1, n2, spacing);
}

PathComponent PathComponent::from_angles(double elevation, double azimuth, double delay, cd gain)
{
    PathComponent p;
    p.elevation_aod = elevation;
    p.azimuth_aod = azimuth;
    p.theta = std::sin(elevation) * std::cos(azimuth);
    p.phi = std::cos(elevation);
    p.delay = delay;
    p.gain = gain;
    return p;
}

PathComponent PathComponent::from_virtual(double theta, double phi, double delay, cd gain)
{
    PathComponent p;
    p.theta = theta;
    p.phi = phi;
    p.delay = delay;
    p.gain = gain;
    const double elev_mag = std::acos(std::clamp(phi, -1.0, 1.0));
    p.elevation_aod = theta < 0.0 ? -elev_mag : elev_mag;
    const double s = std::sin(p.elevation_aod);
    p.azimuth_aod = s != 0.0 ? std::acos(std::clamp(theta / s, -1.0, 1.0)) : 0.0;
    return p;
}

ChannelTensor::ChannelTensor(int num_positions, int num_users, int num_subcarriers)
    : n_(num_positions), k_(num_users), nc_(num_subcarriers)
{
    if (num_positions < 0 || num_users < 0 || num_subcarriers < 0)
        throw std::invalid_argument("tensor dimensions must be non-negative");
    users_.assign(static_cast<std::size_t>(num_users), CMatrix::Zero(num_positions, num_subcarriers));
}

CMatrix ChannelTensor::subcarrier(int q) const
{
    CMatrix out(n_, k_);
    for (int k = 0; k < k_; ++k)
        out.col(k) = users_[static_cast<std::size_t>(k)].col(q);
    return out;
}

double ChannelTensor::squared_norm() const
{
    double s = 0.0;
    for (const auto& u : users_)
        s += u.squaredNorm();
    return s;
}

bool ChannelTensor::all_finite() const
{
    for (const auto& u : users_)
        if (!u.allFinite())
            return false;
    return true;
}

UserChannel sample_user_channel(Rng& rng, int num_paths, double bandwidth)
{
    if (num_paths < 1)
        throw std::invalid_argument("a user channel needs at least one path");
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    std::uniform_real_distribution<double> aod(-kPi / 2.0, kPi / 2.0);
    std::uniform_real_distribution<double> delay(0.0, 8.0 / bandwidth);
    const double gain_var = 1.0 / num_paths;

    UserChannel user;
    user.paths.reserve(static_cast<std::size_t>(num_paths));
    for (int l = 0; l < num_paths; ++l) {
        const double elevation = aod(rng);
        const double azimuth = aod(rng);
        const double tau = delay(rng);
        const cd beta = complex_gaussian(rng, gain_var);
        user.paths.push_back(PathComponent::from_angles(elevation, azimuth, tau, beta));
    }
    return user;
}

namespace {

// exp(-j * angle)
cd unit_phasor(double angle)
{
    return {std::cos(angle), -std::sin(angle)};
}

} // namespace

cd channel_coeff(const UserChannel& user, const Point& position, int subcarrier, const OfdmConfig& cfg)
{
    if (subcarrier < 1 || subcarrier > cfg.num_subcarriers)
        throw std::invalid_argument("subcarrier index out of range");
    const double k0 = 2.0 * kPi / cfg.wavelength();
    const double f = 2.0 * kPi * subcarrier * cfg.bandwidth / cfg.num_subcarriers;
    cd h{0.0, 0.0};
    for (const auto& p : user.paths) {
        const double spatial = k0 * (position.x * p.theta + position.y * p.phi);
        h += p.gain * unit_phasor(f * p.delay) * unit_phasor(spatial);
    }
    return h;
}

ChannelTensor build_channel_tensor(std::span<const UserChannel> users, const PositionGrid& grid,
                                   const OfdmConfig& cfg)
{
    if (users.empty())
        throw std::invalid_argument("at least one user is required");
    cfg.validate();
    const int n_pos = grid.size();
    const int nc = cfg.num_subcarriers;
    const double k0 = 2.0 * kPi / cfg.wavelength();
    ChannelTensor tensor(n_pos, static_cast<int>(users.size()), nc);

    for (std::size_t k = 0; k < users.size(); ++k) {
        const auto& paths = users[k].paths;
        const auto num_paths = static_cast<Eigen::Index>(paths.size());
        // Separable form: (N x L steering) * (L x Nc gain/delay factors).
        CMatrix steering(n_pos, num_paths);
        CMatrix freq(num_paths, nc);
        for (Eigen::Index l = 0; l < num_paths; ++l) {
            const auto& p = paths[static_cast<std::size_t>(l)];
            for (int n = 0; n < n_pos; ++n)
                steering(n, l) = unit_phasor(k0 * (grid[n].x * p.theta + grid[n].y * p.phi));
            for (int q = 0; q < nc; ++q) {
                const double f = 2.0 * kPi * (q + 1) * cfg.bandwidth / nc;
                freq(l, q) = p.gain * unit_phasor(f * p.delay);
            }
        }
        tensor.user(static_cast<int>(k)) = steering * freq;
    }
    return tensor;
}

Scenario sample_scenario(const ScenarioParams& params, Rng& rng)
{
    params.ofdm.validate();
    if (params.num_users < 1)
        throw std::invalid_argument("at least one user is required");
    const double spacing = params.spacing > 0.0 ? params.spacing : params.ofdm.wavelength() / 2.0;
    Scenario s{params.ofdm, build_grid(params.n1, params.n2, spacing), {}};
    s.users.reserve(static_cast<std::size_t>(params.num_users));
    for (int k = 0; k < params.num_users; ++k)
        s.users.push_back(sample_user_channel(rng, params.num_paths, params.ofdm.bandwidth));
    return s;
}

std::string scenario_to_json(const Scenario& scenario)
{
    nlohmann::ordered_json doc;
    doc["fc_hz"] = scenario.ofdm.carrier_frequency;
    doc["bs_hz"] = scenario.ofdm.bandwidth;
    doc["nc"] = scenario.ofdm.num_subcarriers;
    doc["n1"] = scenario.grid.n1();
    doc["n2"] = scenario.grid.n2();
    doc["spacing_m"] = scenario.grid.spacing();
    auto users = nlohmann::ordered_json::array();
    for (const auto& u : scenario.users) {
        auto paths = nlohmann::ordered_json::array();
        for (const auto& p : u.paths) {
            nlohmann::ordered_json jp;
            jp["theta"] = p.theta;
            jp["phi"] = p.phi;
            jp["delay_s"] = p.delay;
            jp["gain_re"] = p.gain.real();
            jp["gain_im"] = p.gain.imag();
            paths.push_back(std::move(jp));
        }
        nlohmann::ordered_json ju;
        ju["paths"] = std::move(paths);
        users.push_back(std::move(ju));
    }
    doc["users"] = std::move(users);
    return doc.dump(2) + "\n";
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* field)
{
    if (!j.is_object() || !j.contains(field))
        throw std::invalid_argument(std::string("missing required field '") + field + "'");
    return j.at(field);
}

} // namespace

Scenario scenario_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario is not valid JSON: ") + e.what());
    }
    try {
        Scenario s;
        s.ofdm.carrier_frequency = require(doc, "fc_hz").get<double>();
        s.ofdm.bandwidth = require(doc, "bs_hz").get<double>();
        s.ofdm.num_subcarriers = require(doc, "nc").get<int>();
        s.ofdm.validate();
        s.grid = build_grid(require(doc, "n1").get<int>(), require(doc, "n2").get<int>(),
                            require(doc, "spacing_m").get<double>());
        for (const auto& ju : require(doc, "users")) {
            UserChannel u;
            for (const auto& jp : require(ju, "paths")) {
                const cd gain{require(jp, "gain_re").get<double>(), require(jp, "gain_im").get<double>()};
                u.paths.push_back(PathComponent::from_virtual(require(jp, "theta").get<double>(),
                                                              require(jp, "phi").get<double>(),
                                                              require(jp, "delay_s").get<double>(), gain));
            }
            if (u.paths.empty())
                throw std::invalid_argument("user without paths");
            s.users.push_back(std::move(u));
        }
        if (s.users.empty())
            throw std::invalid_argument("scenario has no users");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed scenario: ") + e.what());
    }
}

} // namespace maopt

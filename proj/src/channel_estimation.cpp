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

#include "maopt/channel_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace maopt {

std::string_view to_string(PatternKind kind)
{
    switch (kind) {
    case PatternKind::UpaSubgrid:
        return "upa-subgrid";
    case PatternKind::UniformRandom:
        return "uniform-random";
    case PatternKind::RowBand:
        return "row-band";
    case PatternKind::Cross:
        return "cross";
    }
    return "unknown";
}

PatternKind pattern_kind_from_string(std::string_view name)
{
    for (auto kind : {PatternKind::UpaSubgrid, PatternKind::UniformRandom, PatternKind::RowBand, PatternKind::Cross})
        if (to_string(kind) == name)
            return kind;
    throw std::invalid_argument("unknown CE pattern '" + std::string(name) + "'");
}

namespace {

// Largest stride that fits `count` equally spaced points on an axis of `extent` points.
int axis_stride(int count, int extent)
{
    return count <= 1 ? 1 : (extent - 1) / (count - 1);
}

std::vector<int> upa_subgrid(const PositionGrid& grid, int num_probes)
{
    const int n1 = grid.n1();
    const int n2 = grid.n2();
    // Among factorizations J = j1 * j2 that fit the grid, prefer the most even
    // coverage of both axes, then the denser azimuth axis.
    int best_j1 = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int j1 = std::min(n1, num_probes); j1 >= 1; --j1) {
        if (num_probes % j1 != 0)
            continue;
        const int j2 = num_probes / j1;
        if (j2 > n2)
            continue;
        const double gap = std::abs(static_cast<double>(j1) / n1 - static_cast<double>(j2) / n2);
        if (gap < best_gap - 1e-12) {
            best_gap = gap;
            best_j1 = j1;
        }
    }
    if (best_j1 == 0)
        throw std::invalid_argument("no uniform sub-lattice with " + std::to_string(num_probes) + " positions fits a " +
                                    std::to_string(n1) + "x" + std::to_string(n2) + " grid");
    const int j1 = best_j1;
    const int j2 = num_probes / j1;
    const int s1 = axis_stride(j1, n1);
    const int s2 = axis_stride(j2, n2);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(num_probes));
    for (int b = 0; b < j2; ++b)
        for (int a = 0; a < j1; ++a)
            out.push_back(grid.index(a * s1, b * s2));
    return out;
}

std::vector<int> cross_pattern(const PositionGrid& grid, int num_probes)
{
    const int c1 = (grid.n1() - 1) / 2;
    const int c2 = (grid.n2() - 1) / 2;
    // Center row and column first, then the remaining positions by Chebyshev
    // distance from the center; ties resolved by index.
    std::vector<int> order(static_cast<std::size_t>(grid.size()));
    std::iota(order.begin(), order.end(), 0);
    auto rank = [&](int n) {
        const int i1 = n % grid.n1();
        const int i2 = n / grid.n1();
        if (i1 == c1 || i2 == c2)
            return std::make_pair(0, std::max(std::abs(i1 - c1), std::abs(i2 - c2)));
        return std::make_pair(1, std::max(std::abs(i1 - c1), std::abs(i2 - c2)));
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank(a) < rank(b); });
    order.resize(static_cast<std::size_t>(num_probes));
    return order;
}

} // namespace

CePattern build_ce_pattern(const PositionGrid& grid, int num_probes, PatternKind kind, Rng& rng)
{
    const int n = grid.size();
    if (num_probes < 1 || num_probes > n)
        throw std::invalid_argument("number of probed positions must be in 1.." + std::to_string(n) + ", got " +
                                    std::to_string(num_probes));
    CePattern pattern;
    pattern.kind = kind;
    switch (kind) {
    case PatternKind::UpaSubgrid:
        pattern.indices = upa_subgrid(grid, num_probes);
        break;
    case PatternKind::UniformRandom: {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        // Partial Fisher-Yates.
        for (int i = 0; i < num_probes; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
        }
        pattern.indices.assign(all.begin(), all.begin() + num_probes);
        break;
    }
    case PatternKind::RowBand:
        pattern.indices.resize(static_cast<std::size_t>(num_probes));
        std::iota(pattern.indices.begin(), pattern.indices.end(), 0);
        break;
    case PatternKind::Cross:
        pattern.indices = cross_pattern(grid, num_probes);
        break;
    }
    std::sort(pattern.indices.begin(), pattern.indices.end());
    return pattern;
}

void PilotConfig::validate() const
{
    if (!(pilot_power > 0.0))
        throw std::invalid_argument("pilot power must be positive");
    if (!(noise_power >= 0.0))
        throw std::invalid_argument("noise power must be non-negative");
}

PilotObservations synthesize_pilots(const ChannelTensor& tensor, const CePattern& pattern, const PilotConfig& cfg,
                                    Rng& rng)
{
    cfg.validate();
    const int j = pattern.size();
    for (int idx : pattern.indices)
        if (idx < 0 || idx >= tensor.num_positions())
            throw std::invalid_argument("pattern index out of range");
    const double amp = std::sqrt(cfg.pilot_power);
    PilotObservations obs;
    obs.per_user.reserve(static_cast<std::size_t>(tensor.num_users()));
    // Noise is drawn user-major, then subcarrier, then probe.
    for (int k = 0; k < tensor.num_users(); ++k) {
        CMatrix y(j, tensor.num_subcarriers());
        for (int q = 0; q < tensor.num_subcarriers(); ++q)
            for (int r = 0; r < j; ++r)
                y(r, q) = amp * tensor(pattern.indices[static_cast<std::size_t>(r)], k, q) +
                          complex_gaussian(rng, cfg.noise_power);
        obs.per_user.push_back(std::move(y));
    }
    return obs;
}

Dictionary::Dictionary(const PositionGrid& grid, int grid_size, double wavelength)
    : grid_(grid), g_(grid_size), wavelength_(wavelength)
{
    if (grid_size < 1)
        throw std::invalid_argument("dictionary grid size must be at least 1");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    atoms_.resize(grid.size(), static_cast<Eigen::Index>(g_) * g_);
    for (int g1 = 0; g1 < g_; ++g1)
        for (int g2 = 0; g2 < g_; ++g2)
            atoms_.col(atom_index(g1, g2)) = steering(theta_at(g1), phi_at(g2));
}

std::pair<double, double> Dictionary::direction(int atom) const
{
    const auto [g1, g2] = grid_pair(atom);
    return {theta_at(g1), phi_at(g2)};
}

std::vector<char> Dictionary::forward_atoms() const
{
    std::vector<char> mask(static_cast<std::size_t>(num_atoms()), 0);
    for (int g = 0; g < num_atoms(); ++g)
        mask[static_cast<std::size_t>(g)] = direction(g).second > 0.0 ? 1 : 0;
    return mask;
}

CVector Dictionary::steering(double theta, double phi) const
{
    const double k0 = 2.0 * kPi / wavelength_;
    CVector a(grid_.size());
    for (int n = 0; n < grid_.size(); ++n) {
        const double angle = k0 * (grid_[n].x * theta + grid_[n].y * phi);
        a(n) = cd{std::cos(angle), -std::sin(angle)};
    }
    return a;
}

CMatrix Dictionary::sensing(const CePattern& pattern) const
{
    CMatrix phi(pattern.size(), atoms_.cols());
    for (int r = 0; r < pattern.size(); ++r)
        phi.row(r) = atoms_.row(pattern.indices[static_cast<std::size_t>(r)]);
    return phi;
}

Dictionary build_dictionary(const PositionGrid& grid, int grid_size, double wavelength)
{
    return Dictionary(grid, grid_size, wavelength);
}

SompResult somp(const CMatrix& observations, const CMatrix& sensing, int num_paths,
                std::span<const char> admissible)
{
    const Eigen::Index j = sensing.rows();
    if (observations.rows() != j)
        throw std::invalid_argument("observation rows must match sensing rows");
    if (num_paths < 0 || num_paths > j)
        throw std::invalid_argument("number of paths must not exceed the number of probed positions");
    if (!admissible.empty() && static_cast<Eigen::Index>(admissible.size()) != sensing.cols())
        throw std::invalid_argument("admissible mask must have one flag per atom");
    const auto candidates = admissible.empty()
                                ? sensing.cols()
                                : static_cast<Eigen::Index>(std::count(admissible.begin(), admissible.end(), 1));
    if (num_paths > candidates)
        throw std::invalid_argument("number of paths exceeds the number of candidate atoms");

    SompResult out;
    out.coefficients = CMatrix::Zero(0, observations.cols());
    CMatrix residual = observations;
    out.residual_norms.push_back(residual.norm());
    std::vector<char> taken(static_cast<std::size_t>(sensing.cols()), 0);
    if (!admissible.empty())
        for (std::size_t g = 0; g < taken.size(); ++g)
            taken[g] = admissible[g] ? 0 : 1;
    CMatrix selected(j, 0);

    for (int t = 0; t < num_paths; ++t) {
        const CMatrix corr = sensing.adjoint() * residual;
        const RVector score = corr.rowwise().squaredNorm();
        Eigen::Index best = -1;
        double best_score = -1.0;
        for (Eigen::Index g = 0; g < score.size(); ++g) {
            if (taken[static_cast<std::size_t>(g)])
                continue;
            if (score(g) > best_score) {
                best_score = score(g);
                best = g;
            }
        }
        taken[static_cast<std::size_t>(best)] = 1;
        out.support.push_back(static_cast<int>(best));
        selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
        selected.col(selected.cols() - 1) = sensing.col(best);

        out.coefficients = lstsq(selected, observations);
        residual = observations - selected * out.coefficients;
        out.residual_norms.push_back(residual.norm());
    }
    return out;
}

SparseEstimate ls_refit(std::span<const int> support, const Dictionary& dictionary, const CePattern& pattern,
                        const CMatrix& observations)
{
    if (observations.rows() != pattern.size())
        throw std::invalid_argument("observation rows must match the pattern size");
    SparseEstimate est;
    est.support.assign(support.begin(), support.end());
    const auto num_paths = static_cast<Eigen::Index>(support.size());
    const Eigen::Index n = dictionary.atoms().rows();
    est.reconstructed_steering.resize(n, num_paths);
    for (Eigen::Index l = 0; l < num_paths; ++l) {
        const int atom = support[static_cast<std::size_t>(l)];
        if (atom < 0 || atom >= dictionary.num_atoms())
            throw std::invalid_argument("support index outside the dictionary");
        const auto dir = dictionary.direction(atom);
        est.angle_estimates.push_back(dir);
        est.reconstructed_steering.col(l) = dictionary.steering(dir.first, dir.second);
    }
    CMatrix probed(pattern.size(), num_paths);
    for (int r = 0; r < pattern.size(); ++r)
        probed.row(r) = est.reconstructed_steering.row(pattern.indices[static_cast<std::size_t>(r)]);
    est.coefficients = lstsq(probed, observations);
    est.initial_csi = est.reconstructed_steering * est.coefficients;
    return est;
}

ChannelTensor assemble_initial_csi(std::span<const SparseEstimate> estimates, double pilot_power)
{
    if (estimates.empty())
        throw std::invalid_argument("no estimates to assemble");
    if (!(pilot_power > 0.0))
        throw std::invalid_argument("pilot power must be positive");
    const auto& first = estimates.front().initial_csi;
    ChannelTensor out(static_cast<int>(first.rows()), static_cast<int>(estimates.size()),
                      static_cast<int>(first.cols()));
    const double scale = 1.0 / std::sqrt(pilot_power);
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        const auto& csi = estimates[k].initial_csi;
        if (csi.rows() != first.rows() || csi.cols() != first.cols())
            throw std::invalid_argument("per-user estimates have inconsistent shapes");
        out.user(static_cast<int>(k)) = csi * scale;
    }
    return out;
}

double nmse(const ChannelTensor& estimate, const ChannelTensor& truth)
{
    if (!estimate.same_shape(truth))
        throw std::invalid_argument("estimate and truth shapes differ");
    const double denom = truth.squared_norm();
    if (!(denom > 0.0))
        throw std::domain_error("NMSE undefined for an all-zero reference channel");
    double err = 0.0;
    for (int k = 0; k < truth.num_users(); ++k)
        err += (truth.user(k) - estimate.user(k)).squaredNorm();
    return err / denom;
}

ChannelTensor estimate_channel(const PilotObservations& pilots, const Dictionary& dictionary,
                               const CePattern& pattern, const PilotConfig& pilot_cfg, const EstimatorConfig& cfg,
                               std::vector<SparseEstimate>* estimates)
{
    const CMatrix sensing = dictionary.sensing(pattern);
    const std::vector<char> mask = cfg.forward_only ? dictionary.forward_atoms() : std::vector<char>{};
    std::vector<SparseEstimate> per_user;
    per_user.reserve(pilots.per_user.size());
    for (const auto& y : pilots.per_user) {
        const auto found = somp(y, sensing, cfg.num_paths, mask);
        per_user.push_back(ls_refit(found.support, dictionary, pattern, y));
    }
    auto tensor = assemble_initial_csi(per_user, pilot_cfg.pilot_power);
    if (estimates)
        *estimates = std::move(per_user);
    return tensor;
}

} // namespace maopt

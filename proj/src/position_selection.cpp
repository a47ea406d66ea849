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

#include "maopt/position_selection.hpp"

#include "maopt/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace maopt {

PositionAssignment::PositionAssignment(std::vector<int> positions) : positions_(std::move(positions)) {}

void PositionAssignment::validate(int num_positions) const
{
    std::vector<char> seen(static_cast<std::size_t>(std::max(num_positions, 0)), 0);
    for (int p : positions_) {
        if (p < 0 || p >= num_positions)
            throw std::invalid_argument("assigned position " + std::to_string(p) + " is outside the grid");
        if (seen[static_cast<std::size_t>(p)]++)
            throw std::invalid_argument("position " + std::to_string(p) + " is assigned to two antennas");
    }
}

RMatrix PositionAssignment::selection_matrix(int num_positions) const
{
    validate(num_positions);
    RMatrix b = RMatrix::Zero(num_positions, num_antennas());
    for (int m = 0; m < num_antennas(); ++m)
        b(positions_[static_cast<std::size_t>(m)], m) = 1.0;
    return b;
}

EquivalentChannel::EquivalentChannel(std::vector<CMatrix> per_subcarrier) : per_q_(std::move(per_subcarrier)) {}

EquivalentChannel EquivalentChannel::restrict_to(std::span<const int> subcarriers) const
{
    std::vector<CMatrix> out;
    out.reserve(subcarriers.size());
    for (int q : subcarriers) {
        if (q < 0 || q >= num_subcarriers())
            throw std::invalid_argument("subcarrier index out of range");
        out.push_back(per_q_[static_cast<std::size_t>(q)]);
    }
    return EquivalentChannel(std::move(out));
}

namespace {

EquivalentChannel gather(const ChannelTensor& tensor, std::span<const int> positions, std::span<const int> subcarriers)
{
    const auto m = static_cast<Eigen::Index>(positions.size());
    std::vector<CMatrix> per_q;
    per_q.reserve(subcarriers.size());
    for (int q : subcarriers) {
        CMatrix h(tensor.num_users(), m);
        for (int k = 0; k < tensor.num_users(); ++k)
            for (Eigen::Index j = 0; j < m; ++j)
                h(k, j) = tensor(positions[static_cast<std::size_t>(j)], k, q);
        per_q.push_back(std::move(h));
    }
    return EquivalentChannel(std::move(per_q));
}

} // namespace

EquivalentChannel apply_assignment(const ChannelTensor& tensor, const PositionAssignment& assignment)
{
    assignment.validate(tensor.num_positions());
    std::vector<int> all(static_cast<std::size_t>(tensor.num_subcarriers()));
    std::iota(all.begin(), all.end(), 0);
    return gather(tensor, assignment.positions(), all);
}

PositionAssignment sequential_unique_assign(const RMatrix& scores)
{
    const Eigen::Index n = scores.rows();
    const Eigen::Index m = scores.cols();
    if (n < m)
        throw std::invalid_argument("need at least as many positions as antennas");
    if (!scores.allFinite())
        throw std::invalid_argument("scores must be finite");
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index col = 0; col < m; ++col) {
        Eigen::Index best = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (Eigen::Index row = 0; row < n; ++row) {
            if (taken[static_cast<std::size_t>(row)])
                continue;
            if (best < 0 || scores(row, col) > best_score) {
                best = row;
                best_score = scores(row, col);
            }
        }
        taken[static_cast<std::size_t>(best)] = 1;
        out.push_back(static_cast<int>(best));
    }
    return PositionAssignment(std::move(out));
}

PositionAssignment random_select(Rng& rng, int num_positions, int num_antennas)
{
    if (num_antennas < 0 || num_antennas > num_positions)
        throw std::invalid_argument("cannot place " + std::to_string(num_antennas) + " antennas on " +
                                    std::to_string(num_positions) + " positions");
    std::vector<int> all(static_cast<std::size_t>(num_positions));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < num_antennas; ++i) {
        std::uniform_int_distribution<int> pick(i, num_positions - 1);
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
    }
    all.resize(static_cast<std::size_t>(num_antennas));
    return PositionAssignment(std::move(all));
}

std::vector<int> evenly_spaced_subcarriers(int num_subcarriers, int count)
{
    if (num_subcarriers < 1)
        throw std::invalid_argument("need at least one subcarrier");
    count = std::clamp(count, 1, num_subcarriers);
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
        out.push_back(static_cast<int>(static_cast<long long>(i) * num_subcarriers / count));
    return out;
}

RateOracle make_zf_oracle(double transmit_power, double noise_power, std::vector<int> subcarriers)
{
    return [=](const ChannelTensor& tensor, std::span<const int> positions) {
        if (positions.empty())
            return 0.0;
        std::vector<int> qs = subcarriers;
        if (qs.empty()) {
            qs.resize(static_cast<std::size_t>(tensor.num_subcarriers()));
            std::iota(qs.begin(), qs.end(), 0);
        }
        const EquivalentChannel equiv = gather(tensor, positions, qs);
        return sum_rate(equiv, zf(equiv, transmit_power), noise_power);
    };
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (r > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

SelectionResult exhaustive_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle,
                                  std::uint64_t limit)
{
    const int n = tensor.num_positions();
    if (num_antennas < 1 || num_antennas > n)
        throw std::invalid_argument("number of antennas must be in 1..N");
    const std::uint64_t count = binomial(n, num_antennas);
    if (count > limit)
        throw std::length_error("exhaustive search over " + std::to_string(count) +
                                " subsets exceeds the enumeration limit " + std::to_string(limit));

    // Lexicographic enumeration; strict improvement keeps the first maximizer.
    std::vector<int> subset(static_cast<std::size_t>(num_antennas));
    std::iota(subset.begin(), subset.end(), 0);
    SelectionResult best{PositionAssignment(subset), -std::numeric_limits<double>::infinity()};
    const auto m = static_cast<std::size_t>(num_antennas);
    while (true) {
        const double r = oracle(tensor, subset);
        if (r > best.rate)
            best = {PositionAssignment(subset), r};
        std::size_t i = m;
        while (i > 0 && subset[i - 1] == n - static_cast<int>(m) + static_cast<int>(i) - 1)
            --i;
        if (i == 0)
            break;
        ++subset[i - 1];
        for (std::size_t j = i; j < m; ++j)
            subset[j] = subset[j - 1] + 1;
    }
    return best;
}

SelectionResult greedy_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle)
{
    const int n = tensor.num_positions();
    if (num_antennas < 1 || num_antennas > n)
        throw std::invalid_argument("number of antennas must be in 1..N");
    std::vector<int> chosen;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    double rate = 0.0;
    for (int step = 0; step < num_antennas; ++step) {
        int best = -1;
        double best_rate = -std::numeric_limits<double>::infinity();
        chosen.push_back(-1);
        for (int p = 0; p < n; ++p) {
            if (used[static_cast<std::size_t>(p)])
                continue;
            chosen.back() = p;
            const double r = oracle(tensor, chosen);
            if (r > best_rate) {
                best_rate = r;
                best = p;
            }
        }
        chosen.back() = best;
        used[static_cast<std::size_t>(best)] = 1;
        rate = best_rate;
    }
    return {PositionAssignment(std::move(chosen)), rate};
}

void CeoParams::validate() const
{
    if (samples < 1)
        throw std::invalid_argument("CEO needs at least one sample per iteration");
    if (!(elite_fraction > 0.0 && elite_fraction < 1.0))
        throw std::invalid_argument("CEO elite fraction must be in (0, 1)");
    if (!(smoothing > 0.0 && smoothing <= 1.0))
        throw std::invalid_argument("CEO smoothing must be in (0, 1]");
    if (iterations < 0)
        throw std::invalid_argument("CEO iteration count must be non-negative");
}

namespace {

// Sequential draws proportional to weight among the positions still free.
std::vector<int> weighted_subset(Rng& rng, const std::vector<double>& weights, int count)
{
    std::vector<double> w = weights;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        double total = 0.0;
        std::size_t free_count = 0;
        for (std::size_t n = 0; n < w.size(); ++n)
            if (w[n] >= 0.0) {
                total += w[n];
                ++free_count;
            }
        std::size_t pick = w.size();
        if (total > 0.0) {
            double target = unit(rng) * total;
            for (std::size_t n = 0; n < w.size(); ++n) {
                if (w[n] <= 0.0)
                    continue;
                pick = n;
                target -= w[n];
                if (target < 0.0)
                    break;
            }
        } else {
            // All remaining weights vanished: fall back to a uniform draw.
            std::uniform_int_distribution<std::size_t> uni(0, free_count - 1);
            std::size_t skip = uni(rng);
            for (std::size_t n = 0; n < w.size(); ++n)
                if (w[n] >= 0.0 && skip-- == 0) {
                    pick = n;
                    break;
                }
        }
        out.push_back(static_cast<int>(pick));
        w[pick] = -1.0; // taken
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

CeoResult ceo_select(const ChannelTensor& tensor, int num_antennas, const RateOracle& oracle, const CeoParams& params,
                     Rng& rng)
{
    params.validate();
    const int n = tensor.num_positions();
    if (num_antennas < 1 || num_antennas > n)
        throw std::invalid_argument("number of antennas must be in 1..N");

    std::vector<double> weights(static_cast<std::size_t>(n), static_cast<double>(num_antennas) / n);
    const auto elites = static_cast<std::size_t>(std::ceil(params.elite_fraction * params.samples - 1e-12));

    CeoResult result;
    result.rate = -std::numeric_limits<double>::infinity();
    result.trace.push_back({result.rate, weights});

    auto sample_round = [&]() {
        std::vector<std::pair<double, std::vector<int>>> batch;
        batch.reserve(static_cast<std::size_t>(params.samples));
        for (int s = 0; s < params.samples; ++s) {
            auto subset = weighted_subset(rng, weights, num_antennas);
            const double r = oracle(tensor, subset);
            if (r > result.rate) {
                result.rate = r;
                result.assignment = PositionAssignment(subset);
            }
            batch.emplace_back(r, std::move(subset));
        }
        return batch;
    };

    if (params.iterations == 0) {
        sample_round();
        result.trace.push_back({result.rate, weights});
        return result;
    }
    for (int it = 0; it < params.iterations; ++it) {
        auto batch = sample_round();
        std::stable_sort(batch.begin(), batch.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
        for (std::size_t e = 0; e < elites && e < batch.size(); ++e)
            for (int p : batch[e].second)
                freq[static_cast<std::size_t>(p)] += 1.0 / static_cast<double>(elites);
        for (std::size_t p = 0; p < weights.size(); ++p)
            weights[p] = params.smoothing * freq[p] + (1.0 - params.smoothing) * weights[p];
        result.trace.push_back({result.rate, weights});
    }
    return result;
}

std::string ceo_trace_csv(const CeoResult& result)
{
    std::ostringstream os;
    os.precision(12);
    os << "iteration,best_rate_bits";
    const std::size_t n = result.trace.empty() ? 0 : result.trace.front().weights.size();
    for (std::size_t p = 0; p < n; ++p)
        os << ",w" << (p + 1);
    os << '\n';
    for (std::size_t it = 0; it < result.trace.size(); ++it) {
        const auto& row = result.trace[it];
        os << it << ',';
        if (std::isfinite(row.best_rate))
            os << row.best_rate;
        for (double w : row.weights)
            os << ',' << w;
        os << '\n';
    }
    return os.str();
}

} // namespace maopt

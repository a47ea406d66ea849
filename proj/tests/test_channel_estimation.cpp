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
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace maopt;

namespace {

const double kLambda = OfdmConfig{}.wavelength();

PositionGrid grid8()
{
    return build_grid(8, 8, kLambda / 2);
}

// A user whose paths sit exactly on dictionary atoms.
UserChannel on_grid_user(const Dictionary& dict, std::span<const int> atoms, Rng& rng)
{
    UserChannel u;
    for (int g : atoms) {
        const auto [theta, phi] = dict.direction(g);
        std::uniform_real_distribution<double> delay(0.0, 8.0 / 30e6);
        u.paths.push_back(PathComponent::from_virtual(theta, phi, delay(rng), complex_gaussian(rng, 1.0)));
    }
    return u;
}

} // namespace

TEST_CASE("pattern names")
{
    for (auto k : {PatternKind::UpaSubgrid, PatternKind::UniformRandom, PatternKind::RowBand, PatternKind::Cross})
        CHECK(pattern_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(pattern_kind_from_string("spiral"), std::invalid_argument);
}

TEST_CASE("UPA sub-grid patterns")
{
    const auto g = grid8();
    Rng rng(1);
    const auto full = build_ce_pattern(g, 64, PatternKind::UpaSubgrid, rng);
    std::vector<int> all(64);
    std::iota(all.begin(), all.end(), 0);
    CHECK(full.indices == all);

    const auto half = build_ce_pattern(g, 32, PatternKind::UpaSubgrid, rng);
    REQUIRE(half.size() == 32);
    std::set<int> rows, cols;
    for (int n : half.indices) {
        rows.insert(n / 8);
        cols.insert(n % 8);
    }
    // 8 x 4 sub-lattice, stride 2 on the sparse axis
    CHECK(rows.size() * cols.size() == 32);
    const auto& sparse = rows.size() == 4 ? rows : cols;
    const auto& dense = rows.size() == 4 ? cols : rows;
    CHECK(dense.size() == 8);
    REQUIRE(sparse.size() == 4);
    std::vector<int> s(sparse.begin(), sparse.end());
    for (std::size_t i = 1; i < s.size(); ++i)
        CHECK(s[i] - s[i - 1] == 2);

    const auto quarter = build_ce_pattern(g, 16, PatternKind::UpaSubgrid, rng);
    CHECK(quarter.size() == 16);
    CHECK(std::is_sorted(quarter.indices.begin(), quarter.indices.end()));

    CHECK_THROWS_AS(build_ce_pattern(g, 65, PatternKind::UpaSubgrid, rng), std::invalid_argument);
    CHECK_THROWS_AS(build_ce_pattern(g, 0, PatternKind::UpaSubgrid, rng), std::invalid_argument);
}

TEST_CASE("random, row-band and cross patterns")
{
    const auto g = grid8();
    Rng a(77), b(77);
    const auto p1 = build_ce_pattern(g, 32, PatternKind::UniformRandom, a);
    const auto p2 = build_ce_pattern(g, 32, PatternKind::UniformRandom, b);
    CHECK(p1.indices == p2.indices);
    CHECK(std::set<int>(p1.indices.begin(), p1.indices.end()).size() == 32);
    CHECK(std::is_sorted(p1.indices.begin(), p1.indices.end()));

    const auto band = build_ce_pattern(g, 12, PatternKind::RowBand, a);
    std::vector<int> first(12);
    std::iota(first.begin(), first.end(), 0);
    CHECK(band.indices == first);

    for (int j : {1, 8, 15, 32, 64}) {
        const auto cross = build_ce_pattern(g, j, PatternKind::Cross, a);
        CHECK(cross.size() == j);
        CHECK(std::set<int>(cross.indices.begin(), cross.indices.end()).size() == static_cast<std::size_t>(j));
    }
    // 15 probes make the full centre row plus the centre column (index 3 of 0..7)
    const auto cross = build_ce_pattern(g, 15, PatternKind::Cross, a);
    for (int n : cross.indices)
        CHECK((n / 8 == 3 || n % 8 == 3));
}

TEST_CASE("pilot synthesis")
{
    const auto g = build_grid(4, 4, kLambda / 2);
    Rng rng(2);
    const auto t = oracle::random_tensor(rng, 16, 2, 3);
    const auto pattern = build_ce_pattern(g, 8, PatternKind::UniformRandom, rng);

    const auto y1 = synthesize_pilots(t, pattern, {1.0, 0.0}, rng);
    const auto y4 = synthesize_pilots(t, pattern, {4.0, 0.0}, rng);
    REQUIRE(y1.per_user.size() == 2);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 8; ++j)
            for (int q = 0; q < 3; ++q) {
                CHECK(y1.per_user[k](j, q) == t(pattern.indices[j], k, q));
                CHECK(std::abs(y4.per_user[k](j, q) - 2.0 * t(pattern.indices[j], k, q)) < 1e-15);
            }

    double power = 0.0;
    int count = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto y = synthesize_pilots(t, pattern, {1.0, 1.0}, rng);
        const cd e = y.per_user[0](0, 0) - t(pattern.indices[0], 0, 0);
        power += std::norm(e);
        ++count;
    }
    CHECK(power / count == doctest::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(synthesize_pilots(t, pattern, {0.0, 1.0}, rng), std::invalid_argument);
}

TEST_CASE("dictionary geometry")
{
    const auto g = build_grid(3, 3, kLambda / 2);
    const Dictionary two(g, 2, kLambda);
    REQUIRE(two.num_atoms() == 4);
    std::set<std::pair<double, double>> dirs;
    for (int a = 0; a < 4; ++a)
        dirs.insert(two.direction(a));
    CHECK(dirs == std::set<std::pair<double, double>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    const int zero = two.atom_index(0, 0);
    CHECK(two.direction(zero) == std::pair{0.0, 0.0});
    for (int n = 0; n < 9; ++n)
        CHECK(std::abs(two.atoms()(n, zero) - cd(1.0, 0.0)) < 1e-15);

    // column g equals the steering formula exp(-j 2 pi / lambda (x theta + y phi))
    const Dictionary d(g, 5, kLambda);
    for (int a = 0; a < d.num_atoms(); ++a) {
        const auto [th, ph] = d.direction(a);
        for (int n = 0; n < 9; ++n) {
            const cd want = std::polar(1.0, -2.0 * oracle::pi / kLambda * (g[n].x * th + g[n].y * ph));
            CHECK(std::abs(d.atoms()(n, a) - want) < 1e-12);
        }
    }

    const auto mask = d.forward_atoms();
    for (int a = 0; a < d.num_atoms(); ++a)
        CHECK((mask[a] != 0) == (d.direction(a).second > 0.0));
}

TEST_CASE("SOMP on a single atom and on zero input")
{
    const auto g = grid8();
    const Dictionary d(g, 16, kLambda);
    Rng rng(5);
    // a stride-2 sub-lattice would alias this atom with its neighbour at phi - 1
    const auto pattern = build_ce_pattern(g, 32, PatternKind::UniformRandom, rng);
    const CMatrix phi = d.sensing(pattern);

    const int atom = d.atom_index(11, 13);
    CMatrix y(32, 4);
    for (int q = 0; q < 4; ++q)
        y.col(q) = phi.col(atom) * complex_gaussian(rng, 1.0);
    const auto r = somp(y, phi, 1);
    REQUIRE(r.support.size() == 1);
    CHECK(r.support[0] == atom);
    CHECK(r.residual_norms.back() < 1e-10);

    const CMatrix zero = CMatrix::Zero(32, 4);
    const auto z = somp(zero, phi, 3);
    CHECK(z.support == std::vector<int>{0, 1, 2});
    CHECK(z.coefficients.norm() == 0.0);
    CHECK(z.residual_norms.back() == 0.0);

    CHECK_THROWS_AS(somp(y, phi, 33), std::invalid_argument);
}

TEST_CASE("SOMP residuals never increase")
{
    const auto g = grid8();
    const Dictionary d(g, 32, kLambda);
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pattern = build_ce_pattern(g, 32, PatternKind::UniformRandom, rng);
        const CMatrix y = oracle::random_matrix(rng, 32, 8);
        const auto r = somp(y, d.sensing(pattern), 8);
        REQUIRE(r.residual_norms.size() == 9);
        for (std::size_t i = 1; i < r.residual_norms.size(); ++i)
            CHECK(r.residual_norms[i] <= r.residual_norms[i - 1] + 1e-12);
        CHECK(std::set<int>(r.support.begin(), r.support.end()).size() == 8);
    }
}

TEST_CASE("LS refit closed forms")
{
    const auto g = build_grid(4, 4, kLambda / 2);
    const Dictionary d(g, 2, kLambda);
    Rng rng(7);
    const auto pattern = build_ce_pattern(g, 16, PatternKind::UpaSubgrid, rng);
    const CMatrix y = oracle::random_matrix(rng, 16, 3);
    const int ones = d.atom_index(0, 0);
    const std::vector<int> support{ones};
    const auto est = ls_refit(support, d, pattern, y);
    // all-ones atom: x = a^H y / N, the column mean
    for (int q = 0; q < 3; ++q)
        CHECK(std::abs(est.coefficients(0, q) - y.col(q).mean()) < 1e-12);
    REQUIRE(est.angle_estimates.size() == 1);
    CHECK(est.angle_estimates[0] == std::pair{0.0, 0.0});
    CHECK(est.initial_csi.rows() == 16);
}

TEST_CASE("noiseless on-grid recovery with full observation")
{
    // Odd grid indices put the virtual directions 1/4 apart, where the full
    // 8 x 8 steering vectors are orthogonal and greedy selection is exact.
    const auto g = grid8();
    const Dictionary d(g, 16, kLambda);
    Rng rng(8);
    OfdmConfig ofdm;
    ofdm.num_subcarriers = 8;
    std::vector<UserChannel> users;
    for (int k = 0; k < 2; ++k) {
        std::vector<int> atoms;
        while (atoms.size() < 3) {
            std::uniform_int_distribution<int> pick(0, d.num_atoms() - 1);
            const int a = pick(rng);
            const auto [g1, g2] = d.grid_pair(a);
            if (g1 % 2 == 1 && g2 % 2 == 1 && d.direction(a).second > 0 && std::find(atoms.begin(), atoms.end(), a) == atoms.end())
                atoms.push_back(a);
        }
        users.push_back(on_grid_user(d, atoms, rng));
    }
    const auto truth = build_channel_tensor(users, g, ofdm);
    const auto pattern = build_ce_pattern(g, 64, PatternKind::UpaSubgrid, rng);

    std::vector<std::vector<SparseEstimate>> runs;
    for (double p : {1.0, 4.0}) {
        const PilotConfig pilot{p, 0.0};
        const auto obs = synthesize_pilots(truth, pattern, pilot, rng);
        std::vector<SparseEstimate> parts;
        const auto est = estimate_channel(obs, d, pattern, pilot, {3, true}, &parts);
        CHECK(nmse(est, truth) < 1e-16);
        REQUIRE(parts.size() == 2);
        const auto single = assemble_initial_csi(std::span(parts).first(1), p);
        CHECK((single.user(0) - parts[0].initial_csi / std::sqrt(p)).norm() < 1e-14);
        runs.push_back(parts);
    }
    // coefficients scale with sqrt(P) = 2; the assembled CSI does not
    CHECK(runs[0][0].support == runs[1][0].support);
    CHECK((runs[1][0].coefficients - 2.0 * runs[0][0].coefficients).norm() <
          1e-12 * runs[0][0].coefficients.norm());
}

TEST_CASE("zero observations give a zero estimate")
{
    const auto g = build_grid(4, 4, kLambda / 2);
    const Dictionary d(g, 8, kLambda);
    Rng rng(9);
    const auto pattern = build_ce_pattern(g, 8, PatternKind::UniformRandom, rng);
    PilotObservations obs;
    obs.per_user = {CMatrix::Zero(8, 4), CMatrix::Zero(8, 4)};
    const auto est = estimate_channel(obs, d, pattern, {1.0, 0.0}, {2, true});
    CHECK(est.squared_norm() == 0.0);
}

TEST_CASE("NMSE examples")
{
    Rng rng(10);
    const auto h = oracle::random_tensor(rng, 5, 2, 3);
    CHECK(nmse(h, h) == 0.0);
    ChannelTensor zero(5, 2, 3);
    CHECK(nmse(zero, h) == doctest::Approx(1.0));
    ChannelTensor twice = h;
    for (int k = 0; k < 2; ++k)
        twice.user(k) *= 2.0;
    CHECK(nmse(twice, h) == doctest::Approx(1.0));
    CHECK_THROWS_AS(nmse(h, zero), std::domain_error);
    CHECK_THROWS_AS(nmse(h, ChannelTensor(4, 2, 3)), std::invalid_argument);
}

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

#include "maopt/beamforming.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace maopt;

namespace {

EquivalentChannel random_equiv(Rng& rng, int k, int m, int nc)
{
    std::vector<CMatrix> per_q;
    for (int q = 0; q < nc; ++q)
        per_q.push_back(oracle::random_matrix(rng, k, m));
    return EquivalentChannel(per_q);
}

BeamformerConfig config(double pt, double sigma2 = 1.0)
{
    BeamformerConfig c;
    c.transmit_power = pt;
    c.noise_power = sigma2;
    return c;
}

double power(const CMatrix& w)
{
    return w.squaredNorm();
}

} // namespace

TEST_CASE("SINR and sum-rate special values")
{
    // K = 1: |h^T w|^2 / sigma2
    CMatrix h(1, 2);
    h << cd(1, 1), cd(0, 2);
    EquivalentChannel one({h});
    BeamformingSolution w;
    w.matrices = {CMatrix(2, 1)};
    w.matrices[0] << cd(0.5, 0), cd(0, -1);
    const cd gain = h(0, 0) * w.matrices[0](0, 0) + h(0, 1) * w.matrices[0](1, 0);
    CHECK(sinr(one, w, 0, 0, 0.5) == doctest::Approx(std::norm(gain) / 0.5));

    BeamformingSolution zero;
    zero.matrices = {CMatrix::Zero(2, 1)};
    CHECK(sinr(one, zero, 0, 0, 1.0) == 0.0);
    CHECK(sum_rate(one, zero, 1.0) == 0.0);

    // identity channel and beams: every SINR is 1, four users give 4 bits
    const EquivalentChannel eye({CMatrix::Identity(4, 4), CMatrix::Identity(4, 4), CMatrix::Identity(4, 4)});
    BeamformingSolution id;
    id.matrices.assign(3, CMatrix::Identity(4, 4));
    for (int k = 0; k < 4; ++k)
        CHECK(sinr(eye, id, k, 1, 1.0) == doctest::Approx(1.0));
    CHECK(sum_rate(eye, id, 1.0) == doctest::Approx(4.0));
    CHECK(subcarrier_rate(CMatrix::Identity(4, 4), CMatrix::Identity(4, 4), 1.0) == doctest::Approx(4.0));
}

TEST_CASE("interference enters the SINR denominator")
{
    Rng rng(1);
    const auto e = random_equiv(rng, 3, 3, 1);
    BeamformingSolution w;
    w.matrices = {oracle::random_matrix(rng, 3, 3)};
    const CMatrix g = e.subcarrier(0) * w.matrices[0];
    for (int k = 0; k < 3; ++k) {
        double interference = 0.0;
        for (int i = 0; i < 3; ++i)
            if (i != k)
                interference += std::norm(g(k, i));
        CHECK(sinr(e, w, k, 0, 0.3) == doctest::Approx(std::norm(g(k, k)) / (interference + 0.3)));
    }
}

TEST_CASE("zero forcing")
{
    Rng rng(2);
    // K = 1 reduces to the matched filter
    for (int i = 0; i < 10; ++i) {
        const auto e = random_equiv(rng, 1, 4, 3);
        const auto w = zf(e, 5.0);
        double want = 0.0;
        for (int q = 0; q < 3; ++q)
            want += std::log2(1.0 + 5.0 * e.subcarrier(q).squaredNorm() / 2.0) / 3.0;
        CHECK(sum_rate(e, w, 2.0) == doctest::Approx(want).epsilon(1e-12));
    }

    // orthonormal users, P = 2, sigma2 = 1: SINR 1 each, 2 bits
    CMatrix h = CMatrix::Zero(2, 3);
    h(0, 0) = 1.0;
    h(1, 2) = cd(0.0, 1.0);
    const EquivalentChannel ortho({h, h});
    const auto w = zf(ortho, 2.0);
    CHECK(sinr(ortho, w, 0, 0, 1.0) == doctest::Approx(1.0));
    CHECK(sum_rate(ortho, w, 1.0) == doctest::Approx(2.0));

    // interference is nulled, power is exact, rate matches the closed form
    const auto e = random_equiv(rng, 4, 4, 5);
    const auto z = zf(e, 10.0);
    CHECK_FALSE(z.regularized);
    double want = 0.0;
    for (int q = 0; q < 5; ++q) {
        const CMatrix g = e.subcarrier(q) * z.matrices[q];
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                if (i != k)
                    CHECK(std::abs(g(k, i)) < 1e-9 * std::abs(g(k, k)));
        CHECK(power(z.matrices[q]) == doctest::Approx(10.0).epsilon(1e-12));
        want += oracle::zf_rate(e.subcarrier(q), 10.0, 1.0) / 5.0;
    }
    CHECK(sum_rate(e, z, 1.0) == doctest::Approx(want).epsilon(1e-10));

    // two identical users cannot be separated
    CMatrix dup = oracle::random_matrix(rng, 1, 3).replicate(2, 1);
    const auto r = zf(EquivalentChannel({dup}), 1.0);
    CHECK(r.regularized);
    CHECK(power(r.matrices[0]) == doctest::Approx(1.0));
}

TEST_CASE("user permutation does not change the sum rate")
{
    Rng rng(3);
    const auto e = random_equiv(rng, 3, 4, 2);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
    perm.indices() << 2, 0, 1;
    std::vector<CMatrix> permuted;
    for (int q = 0; q < 2; ++q)
        permuted.push_back(perm * e.subcarrier(q));
    const EquivalentChannel p(permuted);
    CHECK(sum_rate(p, zf(p, 4.0), 1.0) == doctest::Approx(sum_rate(e, zf(e, 4.0), 1.0)));
    CHECK(sum_rate(p, wmmse(p, config(4.0)).first, 1.0) ==
          doctest::Approx(sum_rate(e, wmmse(e, config(4.0)).first, 1.0)).epsilon(1e-6));
}

TEST_CASE("power normalization")
{
    Rng rng(4);
    const auto e = random_equiv(rng, 2, 3, 2);
    auto m = mrt(e, 3.0);
    for (const auto& w : m.matrices)
        CHECK(power(w) == doctest::Approx(3.0));
    BeamformingSolution s;
    s.matrices = {oracle::random_matrix(rng, 3, 2), oracle::random_matrix(rng, 3, 2)};
    normalize_power(s, 7.0);
    CHECK(power(s.matrices[0]) == doctest::Approx(7.0));
    CHECK(power(s.matrices[1]) == doctest::Approx(7.0));
    s.matrices[1].setZero();
    CHECK_THROWS(normalize_power(s, 7.0));
    CHECK_THROWS_AS(zf(e, 0.0), std::invalid_argument);
}

TEST_CASE("WMMSE single user closed form")
{
    // h = e1, P = 1, sigma2 = 1: one bit
    CMatrix h = CMatrix::Zero(1, 4);
    h(0, 0) = 1.0;
    const EquivalentChannel unit({h});
    CHECK(sum_rate(unit, wmmse(unit, config(1.0)).first, 1.0) == doctest::Approx(1.0).epsilon(1e-9));

    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto e = random_equiv(rng, 1, 4, 2);
        const auto [w, state] = wmmse(e, config(10.0));
        double want = 0.0;
        for (int q = 0; q < 2; ++q)
            want += std::log2(1.0 + 10.0 * e.subcarrier(q).squaredNorm()) / 2.0;
        CHECK(std::abs(sum_rate(e, w, 1.0) - want) < 1e-6);
    }
}

TEST_CASE("WMMSE iteration contract")
{
    Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        const auto e = random_equiv(rng, 4, 4, 3);
        const auto [w, state] = wmmse(e, config(10.0));
        REQUIRE(state.rate_trace.size() == static_cast<std::size_t>(state.iterations) + 1);
        for (std::size_t t = 1; t < state.rate_trace.size(); ++t)
            CHECK(state.rate_trace[t] >= state.rate_trace[t - 1] - 1e-9);
        for (const auto& m : w.matrices)
            CHECK(std::abs(power(m) - 10.0) <= 1e-6 * 10.0);
        CHECK(sum_rate(e, w, 1.0) == doctest::Approx(state.rate_trace.back()));
    }
}

TEST_CASE("receiver weights equal one plus the SINR")
{
    Rng rng(7);
    const auto e = random_equiv(rng, 3, 4, 2);
    const auto w = zf(e, 5.0);
    BeamformingSolution mixed = w;
    mixed.matrices[0] += 0.3 * oracle::random_matrix(rng, 4, 3);
    const auto rx = update_receivers(e, mixed, 1.0, WmmseVariant::StandardAllTerms);
    for (int q = 0; q < 2; ++q)
        for (int k = 0; k < 3; ++k)
            CHECK(rx.v(k, q) == doctest::Approx(1.0 + sinr(e, mixed, k, q, 1.0)).epsilon(1e-10));

    // excluding-k form: v = 1 / (1 - SINR)
    const auto strict = update_receivers(e, mixed, 1.0, WmmseVariant::StrictExcludingK);
    const double s = sinr(e, mixed, 0, 0, 1.0);
    CHECK(strict.v(0, 0) == doctest::Approx(1.0 / (1.0 - s)).epsilon(1e-9));
}

TEST_CASE("WMMSE usually beats ZF with two users")
{
    Rng rng(8);
    int wins = 0;
    for (int i = 0; i < 100; ++i) {
        const auto e = random_equiv(rng, 2, 4, 1);
        const double r_w = sum_rate(e, wmmse(e, config(10.0)).first, 1.0);
        const double r_z = sum_rate(e, zf(e, 10.0), 1.0);
        wins += r_w >= r_z - 1e-9 ? 1 : 0;
    }
    CHECK(wins >= 90);
}

TEST_CASE("variant names")
{
    for (auto v : {WmmseVariant::StandardAllTerms, WmmseVariant::StrictExcludingK})
        CHECK(wmmse_variant_from_string(to_string(v)) == v);
    CHECK(to_string(WmmseVariant::StrictExcludingK) == "strict-paper-excluding-k");
    CHECK_THROWS_AS(wmmse_variant_from_string("other"), std::invalid_argument);
}

TEST_CASE("strict variant still meets the power constraint")
{
    Rng rng(9);
    const auto e = random_equiv(rng, 2, 4, 2);
    auto cfg = config(10.0);
    cfg.variant = WmmseVariant::StrictExcludingK;
    cfg.max_iterations = 20;
    const auto [w, state] = wmmse(e, cfg);
    for (const auto& m : w.matrices)
        CHECK(power(m) == doctest::Approx(10.0));
    CHECK(std::isfinite(sum_rate(e, w, 1.0)));
}

TEST_CASE("parametric beamformer")
{
    Rng rng(10);
    // a = 1, b = 1, c = 0: w = conj(h), the matched filter
    const auto e = random_equiv(rng, 1, 4, 2);
    ParametricBeamformer p;
    p.a = CMatrix::Ones(1, 2);
    p.b = RVector::Ones(2);
    p.c = RMatrix::Zero(1, 2);
    const auto w = build_parametric_w(p, e, 3.0);
    CHECK(sum_rate(e, w, 1.0) == doctest::Approx(sum_rate(e, mrt(e, 3.0), 1.0)));
    for (int q = 0; q < 2; ++q) {
        const CVector dir = e.subcarrier(q).row(0).adjoint();
        const cd ratio = w.matrices[q](0, 0) / dir(0);
        CHECK((w.matrices[q].col(0) - ratio * dir).norm() < 1e-12);
    }

    WmmseState s;
    s.u = CMatrix::Ones(2, 3);
    s.v = RMatrix::Ones(2, 3);
    s.mu = RVector::Zero(3);
    const auto x = extract_params(s);
    CHECK(x.a == CMatrix::Ones(2, 3));
    CHECK(x.c == RMatrix::Ones(2, 3));
    CHECK(x.b == RVector::Zero(3));
}

TEST_CASE("parametric round trip and refinement")
{
    Rng rng(11);
    auto cfg = config(10.0);
    for (int i = 0; i < 5; ++i) {
        const auto e = random_equiv(rng, 4, 4, 2);
        const auto [w, state] = wmmse(e, cfg);
        const auto params = extract_params(state);
        const double r = sum_rate(e, w, 1.0);
        CHECK(std::abs(sum_rate(e, build_parametric_w(params, e, 10.0), 1.0) - r) < 1e-6);

        const auto same = refine_params(params, e, cfg, 0);
        CHECK(same.a == params.a);
        CHECK(same.b == params.b);
        CHECK(same.c == params.c);

        const auto near = refine_params(params, e, cfg, 60);
        const double gain = sum_rate(e, build_parametric_w(near, e, 10.0), 1.0) - r;
        CHECK(gain >= -1e-9);
        CHECK(gain <= 1e-3);

        auto short_cfg = cfg;
        short_cfg.max_iterations = 2;
        const auto early = extract_params(wmmse(e, short_cfg).second);
        const double before = sum_rate(e, build_parametric_w(early, e, 10.0), 1.0);
        const double after = sum_rate(e, build_parametric_w(refine_params(early, e, cfg, 200), e, 10.0), 1.0);
        CHECK(after >= before);
    }
}

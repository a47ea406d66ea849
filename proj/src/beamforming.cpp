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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maopt {

std::string_view to_string(WmmseVariant variant)
{
    return variant == WmmseVariant::StandardAllTerms ? "standard-all-terms" : "strict-paper-excluding-k";
}

WmmseVariant wmmse_variant_from_string(std::string_view name)
{
    if (name == "standard-all-terms")
        return WmmseVariant::StandardAllTerms;
    if (name == "strict-paper-excluding-k")
        return WmmseVariant::StrictExcludingK;
    throw std::invalid_argument("unknown WMMSE variant '" + std::string(name) + "'");
}

void BeamformerConfig::validate() const
{
    if (!(transmit_power > 0.0))
        throw std::invalid_argument("transmit power must be positive");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("noise power must be positive");
    if (!(rate_tolerance > 0.0))
        throw std::invalid_argument("rate tolerance must be positive");
    if (max_iterations < 0)
        throw std::invalid_argument("iteration limit must be non-negative");
}

namespace {

void check_shapes(const EquivalentChannel& equiv, const BeamformingSolution& solution)
{
    if (solution.num_subcarriers() != equiv.num_subcarriers())
        throw std::invalid_argument("solution and channel disagree on the number of subcarriers");
    for (int q = 0; q < equiv.num_subcarriers(); ++q) {
        const auto& w = solution.matrices[static_cast<std::size_t>(q)];
        if (w.rows() != equiv.num_antennas() || w.cols() != equiv.num_users())
            throw std::invalid_argument("beamforming matrix has the wrong shape");
    }
}

double sinr_from_gains(const CMatrix& gains, int k, double noise_power)
{
    double interference = 0.0;
    for (Eigen::Index i = 0; i < gains.cols(); ++i)
        if (i != k)
            interference += std::norm(gains(k, i));
    return std::norm(gains(k, k)) / (interference + noise_power);
}

} // namespace

double sinr(const EquivalentChannel& equiv, const BeamformingSolution& solution, int k, int q, double noise_power)
{
    if (q < 0 || q >= equiv.num_subcarriers() || k < 0 || k >= equiv.num_users())
        throw std::invalid_argument("user or subcarrier index out of range");
    const CMatrix gains = equiv.subcarrier(q).row(k) * solution.matrices[static_cast<std::size_t>(q)];
    double interference = 0.0;
    for (Eigen::Index i = 0; i < gains.cols(); ++i)
        if (i != k)
            interference += std::norm(gains(0, i));
    return std::norm(gains(0, k)) / (interference + noise_power);
}

double subcarrier_rate(const CMatrix& channel, const CMatrix& w, double noise_power)
{
    const CMatrix gains = channel * w; // (k, i) = h_k^T w_i
    double r = 0.0;
    for (Eigen::Index k = 0; k < gains.rows(); ++k)
        r += std::log2(1.0 + sinr_from_gains(gains, static_cast<int>(k), noise_power));
    return r;
}

double sum_rate(const EquivalentChannel& equiv, const BeamformingSolution& solution, double noise_power)
{
    check_shapes(equiv, solution);
    if (equiv.num_subcarriers() == 0)
        return 0.0;
    double total = 0.0;
    for (int q = 0; q < equiv.num_subcarriers(); ++q)
        total += subcarrier_rate(equiv.subcarrier(q), solution.matrices[static_cast<std::size_t>(q)], noise_power);
    return total / equiv.num_subcarriers();
}

void normalize_power(BeamformingSolution& solution, double transmit_power)
{
    for (auto& w : solution.matrices) {
        const double norm = w.norm();
        if (!(norm > 0.0))
            throw std::domain_error("cannot scale an all-zero beamforming matrix to the power constraint");
        w *= std::sqrt(transmit_power) / norm;
    }
}

BeamformingSolution zf(const EquivalentChannel& equiv, double transmit_power)
{
    if (!(transmit_power > 0.0))
        throw std::invalid_argument("transmit power must be positive");
    const int k_users = equiv.num_users();
    BeamformingSolution out;
    out.matrices.reserve(static_cast<std::size_t>(equiv.num_subcarriers()));
    const double column_norm = std::sqrt(transmit_power / k_users);
    for (int q = 0; q < equiv.num_subcarriers(); ++q) {
        const CMatrix& h = equiv.subcarrier(q);
        CMatrix gram = h * h.adjoint();
        if (numerical_rank(h) < k_users) {
            out.regularized = true;
            const double load = 1e-10 * gram.trace().real();
            gram += CMatrix::Identity(k_users, k_users) * (load > 0.0 ? load : 1e-300);
        }
        CMatrix w = h.adjoint() * gram.ldlt().solve(CMatrix::Identity(k_users, k_users));
        for (int k = 0; k < k_users; ++k) {
            const double n = w.col(k).norm();
            if (n > 0.0 && std::isfinite(n))
                w.col(k) *= column_norm / n;
            else
                w.col(k).setZero();
        }
        out.matrices.push_back(std::move(w));
    }
    normalize_power(out, transmit_power);
    return out;
}

BeamformingSolution mrt(const EquivalentChannel& equiv, double transmit_power)
{
    if (!(transmit_power > 0.0))
        throw std::invalid_argument("transmit power must be positive");
    BeamformingSolution out;
    for (int q = 0; q < equiv.num_subcarriers(); ++q) {
        CMatrix w = equiv.subcarrier(q).adjoint();
        for (Eigen::Index k = 0; k < w.cols(); ++k) {
            const double n = w.col(k).norm();
            if (n > 0.0)
                w.col(k) /= n;
        }
        out.matrices.push_back(std::move(w));
    }
    normalize_power(out, transmit_power);
    return out;
}

ReceiverUpdate update_receivers(const EquivalentChannel& equiv, const BeamformingSolution& solution,
                                double noise_power, WmmseVariant variant)
{
    check_shapes(equiv, solution);
    const int k_users = equiv.num_users();
    const int nc = equiv.num_subcarriers();
    ReceiverUpdate out{CMatrix(k_users, nc), RMatrix(k_users, nc)};
    for (int q = 0; q < nc; ++q) {
        const CMatrix gains = equiv.subcarrier(q) * solution.matrices[static_cast<std::size_t>(q)];
        for (int k = 0; k < k_users; ++k) {
            double interference = 0.0;
            for (int p = 0; p < k_users; ++p)
                if (p != k)
                    interference += std::norm(gains(k, p));
            const double signal = std::norm(gains(k, k));
            double denom = interference + noise_power;
            if (variant == WmmseVariant::StandardAllTerms)
                denom += signal;
            out.u(k, q) = gains(k, k) / denom;
            out.v(k, q) = 1.0 / (1.0 - signal / denom);
        }
    }
    return out;
}

namespace {

// W(mu) = (mu I + A)^+ B restricted to the eigen-directions of A + mu I that
// are numerically non-zero.
class MultiplierSearch {
public:
    MultiplierSearch(const CMatrix& a, const CMatrix& b) : eig_(a)
    {
        if (eig_.info() != Eigen::Success)
            throw std::runtime_error("eigendecomposition failed in beamformer update");
        projected_ = eig_.eigenvectors().adjoint() * b;
        row_power_ = projected_.rowwise().squaredNorm();
        const double scale = eig_.eigenvalues().cwiseAbs().maxCoeff();
        floor_ = std::max(scale, 1e-300) * 1e-12;
    }

    double power(double mu) const
    {
        double p = 0.0;
        for (Eigen::Index i = 0; i < row_power_.size(); ++i) {
            const double d = eig_.eigenvalues()(i) + mu;
            if (std::abs(d) > floor_)
                p += row_power_(i) / (d * d);
        }
        return p;
    }

    CMatrix beamformer(double mu) const
    {
        RVector inv = RVector::Zero(row_power_.size());
        for (Eigen::Index i = 0; i < inv.size(); ++i) {
            const double d = eig_.eigenvalues()(i) + mu;
            if (std::abs(d) > floor_)
                inv(i) = 1.0 / d;
        }
        return eig_.eigenvectors() * inv.asDiagonal() * projected_;
    }

private:
    Eigen::SelfAdjointEigenSolver<CMatrix> eig_;
    CMatrix projected_;
    RVector row_power_;
    double floor_ = 0.0;
};

constexpr int kBracketDoublings = 60;

double find_multiplier(const MultiplierSearch& search, double transmit_power)
{
    if (search.power(0.0) <= transmit_power)
        return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (search.power(hi) > transmit_power) {
        if (++doublings > kBracketDoublings)
            throw std::runtime_error("multiplier bracket did not close after 60 doublings");
        lo = hi;
        hi *= 2.0;
    }
    // Keep the invariant power(lo) > P_t >= power(hi).
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (search.power(mid) > transmit_power)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi)
            break;
    }
    return hi;
}

} // namespace

RVector update_beamformers(const EquivalentChannel& equiv, const ReceiverUpdate& receivers, double transmit_power,
                           BeamformingSolution& solution)
{
    const int k_users = equiv.num_users();
    const int m = equiv.num_antennas();
    const int nc = equiv.num_subcarriers();
    if (solution.num_subcarriers() != nc)
        solution.matrices.assign(static_cast<std::size_t>(nc), CMatrix::Zero(m, k_users));
    RVector mu = RVector::Zero(nc);
    for (int q = 0; q < nc; ++q) {
        const CMatrix g = equiv.subcarrier(q).adjoint(); // column k is conj(h_k)
        CMatrix a = CMatrix::Zero(m, m);
        CMatrix b(m, k_users);
        for (int p = 0; p < k_users; ++p) {
            const double c = receivers.v(p, q) * std::norm(receivers.u(p, q));
            a.noalias() += c * g.col(p) * g.col(p).adjoint();
            b.col(p) = (receivers.u(p, q) * receivers.v(p, q)) * g.col(p);
        }
        if (!(b.norm() > 0.0))
            continue; // nothing to steer; keep the previous beams
        const MultiplierSearch search(a, b);
        mu(q) = find_multiplier(search, transmit_power);
        CMatrix w = search.beamformer(mu(q));
        const double norm = w.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            continue;
        w *= std::sqrt(transmit_power) / norm;
        solution.matrices[static_cast<std::size_t>(q)] = std::move(w);
    }
    return mu;
}

std::pair<BeamformingSolution, WmmseState> wmmse(const EquivalentChannel& equiv, const BeamformerConfig& cfg,
                                                 const BeamformingSolution& init)
{
    cfg.validate();
    check_shapes(equiv, init);
    for (const auto& w : init.matrices)
        if (std::abs(w.squaredNorm() - cfg.transmit_power) > 1e-6 * cfg.transmit_power)
            throw std::invalid_argument("initial beamformers violate the power constraint");

    BeamformingSolution w = init;
    w.regularized = false;
    WmmseState state;
    state.mu = RVector::Zero(equiv.num_subcarriers());
    state.rate_trace.push_back(sum_rate(equiv, w, cfg.noise_power));

    ReceiverUpdate rx = update_receivers(equiv, w, cfg.noise_power, cfg.variant);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (it > 0)
            rx = update_receivers(equiv, w, cfg.noise_power, cfg.variant);
        state.mu = update_beamformers(equiv, rx, cfg.transmit_power, w);
        state.u = rx.u;
        state.v = rx.v;
        state.iterations = it + 1;
        const double rate = sum_rate(equiv, w, cfg.noise_power);
        const double previous = state.rate_trace.back();
        state.rate_trace.push_back(rate);
        if (std::abs(rate - previous) < cfg.rate_tolerance)
            break;
    }
    if (state.iterations == 0) {
        state.u = rx.u;
        state.v = rx.v;
    }
    return {std::move(w), std::move(state)};
}

std::pair<BeamformingSolution, WmmseState> wmmse(const EquivalentChannel& equiv, const BeamformerConfig& cfg)
{
    return wmmse(equiv, cfg, mrt(equiv, cfg.transmit_power));
}

namespace {

CMatrix parametric_subcarrier(const CMatrix& h, const CMatrix& a, const RVector& b, const RMatrix& c, int q,
                              double transmit_power)
{
    const Eigen::Index k_users = h.rows();
    const Eigen::Index m = h.cols();
    const CMatrix g = h.adjoint();
    CMatrix mat = CMatrix::Identity(m, m) * b(q);
    CMatrix rhs(m, k_users);
    for (Eigen::Index p = 0; p < k_users; ++p) {
        mat.noalias() += c(p, q) * g.col(p) * g.col(p).adjoint();
        rhs.col(p) = a(p, q) * g.col(p);
    }
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(mat);
    const RVector& lambda = eig.eigenvalues();
    const double scale = lambda.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || lambda.cwiseAbs().minCoeff() <= 1e-12 * scale)
        throw std::domain_error("parametric beamformer matrix is singular on subcarrier " + std::to_string(q));
    CMatrix w = eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() * (eig.eigenvectors().adjoint() * rhs);
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw std::domain_error("parametric beamformer vanished on subcarrier " + std::to_string(q));
    return w * (std::sqrt(transmit_power) / norm);
}

void check_params(const ParametricBeamformer& params, const EquivalentChannel& equiv)
{
    const int k_users = equiv.num_users();
    const int nc = equiv.num_subcarriers();
    if (params.a.rows() != k_users || params.a.cols() != nc || params.c.rows() != k_users || params.c.cols() != nc ||
        params.b.size() != nc)
        throw std::invalid_argument("parametric beamformer shape does not match the channel");
    if (!params.a.allFinite() || !params.b.allFinite() || !params.c.allFinite())
        throw std::invalid_argument("parametric beamformer has non-finite parameters");
    if ((params.b.array() < 0.0).any())
        throw std::invalid_argument("parameter b must be non-negative");
}

} // namespace

BeamformingSolution build_parametric_w(const ParametricBeamformer& params, const EquivalentChannel& equiv,
                                       double transmit_power)
{
    if (!(transmit_power > 0.0))
        throw std::invalid_argument("transmit power must be positive");
    check_params(params, equiv);
    BeamformingSolution out;
    out.matrices.reserve(static_cast<std::size_t>(equiv.num_subcarriers()));
    for (int q = 0; q < equiv.num_subcarriers(); ++q)
        out.matrices.push_back(
            parametric_subcarrier(equiv.subcarrier(q), params.a, params.b, params.c, q, transmit_power));
    return out;
}

ParametricBeamformer extract_params(const WmmseState& state)
{
    ParametricBeamformer p;
    p.a = state.u.cwiseProduct(state.v.cast<cd>());
    p.c = state.v.cwiseProduct(state.u.cwiseAbs2());
    p.b = state.mu;
    return p;
}

namespace {

// Real coordinates of one subcarrier's parameters. Entries whose log would be
// undefined (c <= 0 or b == 0) are held fixed.
struct Coordinates {
    enum class Kind { ReA, ImA, LogC, LogB };
    struct Item {
        Kind kind;
        Eigen::Index user;
    };
    std::vector<Item> items;
};

double read(const ParametricBeamformer& p, const Coordinates::Item& it, int q)
{
    switch (it.kind) {
    case Coordinates::Kind::ReA:
        return p.a(it.user, q).real();
    case Coordinates::Kind::ImA:
        return p.a(it.user, q).imag();
    case Coordinates::Kind::LogC:
        return std::log(p.c(it.user, q));
    case Coordinates::Kind::LogB:
        return std::log(p.b(q));
    }
    return 0.0;
}

void write(ParametricBeamformer& p, const Coordinates::Item& it, int q, double x)
{
    switch (it.kind) {
    case Coordinates::Kind::ReA:
        p.a(it.user, q) = cd{x, p.a(it.user, q).imag()};
        break;
    case Coordinates::Kind::ImA:
        p.a(it.user, q) = cd{p.a(it.user, q).real(), x};
        break;
    case Coordinates::Kind::LogC:
        p.c(it.user, q) = std::exp(x);
        break;
    case Coordinates::Kind::LogB:
        p.b(q) = std::exp(x);
        break;
    }
}

} // namespace

ParametricBeamformer refine_params(const ParametricBeamformer& params, const EquivalentChannel& equiv,
                                   const BeamformerConfig& cfg, int budget)
{
    cfg.validate();
    check_params(params, equiv);
    if (budget < 0)
        throw std::invalid_argument("evaluation budget must be non-negative");
    ParametricBeamformer best = params;
    if (budget == 0)
        return best;

    const auto k_users = static_cast<Eigen::Index>(equiv.num_users());
    for (int q = 0; q < equiv.num_subcarriers(); ++q) {
        const CMatrix& h = equiv.subcarrier(q);
        int evaluations = 0;
        auto objective = [&](const ParametricBeamformer& p) {
            ++evaluations;
            try {
                const CMatrix w = parametric_subcarrier(h, p.a, p.b, p.c, q, cfg.transmit_power);
                const double r = subcarrier_rate(h, w, cfg.noise_power);
                return std::isfinite(r) ? r : -std::numeric_limits<double>::infinity();
            } catch (const std::domain_error&) {
                return -std::numeric_limits<double>::infinity();
            }
        };

        Coordinates coords;
        for (Eigen::Index k = 0; k < k_users; ++k) {
            coords.items.push_back({Coordinates::Kind::ReA, k});
            coords.items.push_back({Coordinates::Kind::ImA, k});
            if (best.c(k, q) > 0.0)
                coords.items.push_back({Coordinates::Kind::LogC, k});
        }
        if (best.b(q) > 0.0)
            coords.items.push_back({Coordinates::Kind::LogB, 0});

        double current = objective(best);
        if (!std::isfinite(current) || coords.items.empty())
            continue;
        std::size_t next = 0;
        while (evaluations + 3 <= budget) {
            const auto& item = coords.items[next];
            next = (next + 1) % coords.items.size();

            const double x0 = read(best, item, q);
            double step = 1e-4 * std::max(std::abs(x0), 1.0);
            if (item.kind == Coordinates::Kind::ReA || item.kind == Coordinates::Kind::ImA)
                step = 1e-4 * std::max(std::abs(best.a(item.user, q)), 1e-12);

            ParametricBeamformer probe = best;
            write(probe, item, q, x0 + step);
            const double f_plus = objective(probe);
            write(probe, item, q, x0 - step);
            const double f_minus = objective(probe);

            const double slope = (f_plus - f_minus) / (2.0 * step);
            const double curvature = (f_plus - 2.0 * current + f_minus) / (step * step);
            double move = 0.0;
            if (std::isfinite(slope) && std::isfinite(curvature) && curvature < 0.0)
                move = -slope / curvature;
            else if (std::isfinite(slope) && slope != 0.0)
                move = (slope > 0.0 ? 10.0 : -10.0) * step;

            double candidate_value = -std::numeric_limits<double>::infinity();
            if (move != 0.0 && std::isfinite(move)) {
                write(probe, item, q, x0 + move);
                candidate_value = objective(probe);
            }
            if (candidate_value > current) {
                write(best, item, q, x0 + move);
                current = candidate_value;
            } else if (f_plus > current && f_plus >= f_minus) {
                write(best, item, q, x0 + step);
                current = f_plus;
            } else if (f_minus > current) {
                write(best, item, q, x0 - step);
                current = f_minus;
            }
        }
    }
    return best;
}

} // namespace maopt

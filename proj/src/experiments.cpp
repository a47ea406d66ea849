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

#include "maopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace maopt {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view name, const std::array<E, N>& all, const char* what)
{
    for (E e : all)
        if (to_string(e) == name)
            return e;
    throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

constexpr std::array kAxes{SweepAxis::PilotSnrDb, SweepAxis::DataSnrDb, SweepAxis::NumUsers,
                           SweepAxis::NumPilotPositions};
constexpr std::array kSelectors{SelectorKind::Random, SelectorKind::Greedy, SelectorKind::Exhaustive,
                                SelectorKind::Ceo};
constexpr std::array kBeamformers{BeamformerKind::Zf, BeamformerKind::Wmmse, BeamformerKind::ParametricTIter,
                                  BeamformerKind::ParametricRefined};
constexpr std::array kKinds{SweepKind::Ce, SweepKind::Rate, SweepKind::NetRate};
constexpr std::array kSources{CsiSource::Estimated, CsiSource::Perfect};

} // namespace

std::string_view to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::PilotSnrDb:
        return "pilot_snr_db";
    case SweepAxis::DataSnrDb:
        return "data_snr_db";
    case SweepAxis::NumUsers:
        return "num_users";
    case SweepAxis::NumPilotPositions:
        return "num_pilot_positions";
    }
    return "unknown";
}

std::string_view to_string(SelectorKind kind)
{
    switch (kind) {
    case SelectorKind::Random:
        return "random";
    case SelectorKind::Greedy:
        return "greedy";
    case SelectorKind::Exhaustive:
        return "exhaustive";
    case SelectorKind::Ceo:
        return "ceo";
    }
    return "unknown";
}

std::string_view to_string(BeamformerKind kind)
{
    switch (kind) {
    case BeamformerKind::Zf:
        return "zf";
    case BeamformerKind::Wmmse:
        return "wmmse";
    case BeamformerKind::ParametricTIter:
        return "parametric-T-iter";
    case BeamformerKind::ParametricRefined:
        return "parametric-refined";
    }
    return "unknown";
}

std::string_view to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::Ce:
        return "ce";
    case SweepKind::Rate:
        return "rate";
    case SweepKind::NetRate:
        return "net_rate";
    }
    return "unknown";
}

std::string_view to_string(CsiSource source)
{
    return source == CsiSource::Estimated ? "estimated" : "perfect";
}

SweepAxis sweep_axis_from_string(std::string_view name) { return parse_enum(name, kAxes, "sweep axis"); }
SelectorKind selector_from_string(std::string_view name) { return parse_enum(name, kSelectors, "selector"); }
BeamformerKind beamformer_from_string(std::string_view name) { return parse_enum(name, kBeamformers, "beamformer"); }
SweepKind sweep_kind_from_string(std::string_view name) { return parse_enum(name, kKinds, "sweep kind"); }
CsiSource csi_source_from_string(std::string_view name) { return parse_enum(name, kSources, "CSI source"); }

SweepKind default_sweep_kind(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::PilotSnrDb:
        return SweepKind::Ce;
    case SweepAxis::NumPilotPositions:
        return SweepKind::NetRate;
    default:
        return SweepKind::Rate;
    }
}

void NetRateConfig::validate() const
{
    if (t_total < 1)
        throw std::invalid_argument("coherence block length must be at least 1");
}

double net_rate(double rate, int num_pilots, const NetRateConfig& cfg)
{
    cfg.validate();
    if (num_pilots < 0 || num_pilots > cfg.t_total)
        throw std::invalid_argument("pilot count must be in 0..T_total");
    return (1.0 - static_cast<double>(num_pilots) / cfg.t_total) * rate;
}

namespace {

bool is_integral(double v)
{
    return std::isfinite(v) && v == std::floor(v);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace

void ExperimentConfig::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (sweep_values.empty())
        throw std::invalid_argument("sweep_values must not be empty");
    const bool up = sweep_values.size() < 2 || sweep_values[1] > sweep_values[0];
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
        if (!std::isfinite(sweep_values[i]))
            throw std::invalid_argument("sweep_values must be finite");
        if (i > 0 && (up ? sweep_values[i] <= sweep_values[i - 1] : sweep_values[i] >= sweep_values[i - 1]))
            throw std::invalid_argument("sweep_values must be strictly monotone");
    }
    scenario.ofdm.validate();
    if (scenario.n1 < 1 || scenario.n2 < 1)
        throw std::invalid_argument("grid dimensions must be at least 1");
    if (scenario.num_paths < 1)
        throw std::invalid_argument("num_paths must be at least 1");
    if (num_antennas < 1 || num_antennas > scenario.n1 * scenario.n2)
        throw std::invalid_argument("num_antennas must be in 1..N");
    if (dictionary_size < 1)
        throw std::invalid_argument("dictionary_size must be at least 1");
    if (estimator_paths < 0)
        throw std::invalid_argument("estimator_paths must be non-negative");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("noise_power must be positive");
    if (patterns.empty() || csi.empty() || selectors.empty() || beamformers.empty())
        throw std::invalid_argument("every scheme list needs at least one entry");
    if (selection_subcarriers < 1)
        throw std::invalid_argument("selection_subcarriers must be at least 1");
    if (parametric_iterations < 0 || refine_budget < 0 || wmmse_max_iterations < 0)
        throw std::invalid_argument("iteration counts and budgets must be non-negative");
    if (!(rate_tolerance > 0.0))
        throw std::invalid_argument("rate_tolerance must be positive");
    if (workers < 1)
        throw std::invalid_argument("workers must be at least 1");
    ceo.validate();
    net.validate();

    const int n = scenario.n1 * scenario.n2;
    for (double v : sweep_values) {
        switch (sweep_axis) {
        case SweepAxis::NumUsers:
            if (!is_integral(v) || v < 1 || v > num_antennas)
                throw std::invalid_argument("num_users values must be integers in 1..num_antennas");
            break;
        case SweepAxis::NumPilotPositions:
            if (!is_integral(v) || v < 1 || v > std::min(n, net.t_total))
                throw std::invalid_argument("num_pilot_positions values must be integers in 1..min(N, T_total)");
            break;
        default:
            break;
        }
    }
    if (sweep_axis != SweepAxis::NumUsers && (scenario.num_users < 1 || scenario.num_users > num_antennas))
        throw std::invalid_argument("num_users must be in 1..num_antennas");
    if (sweep_kind == SweepKind::Ce && sweep_axis != SweepAxis::PilotSnrDb)
        throw std::invalid_argument("a CE sweep runs over pilot_snr_db");
    if (sweep_kind == SweepKind::NetRate && sweep_axis != SweepAxis::NumPilotPositions)
        throw std::invalid_argument("a net-rate sweep runs over num_pilot_positions");
    if (sweep_kind == SweepKind::Rate && sweep_axis == SweepAxis::NumPilotPositions)
        throw std::invalid_argument("sweeps over num_pilot_positions use the net_rate kind");
}

ExperimentConfig config_at(const ExperimentConfig& cfg, double value)
{
    ExperimentConfig out = cfg;
    switch (cfg.sweep_axis) {
    case SweepAxis::PilotSnrDb:
        out.pilot_snr_db = value;
        break;
    case SweepAxis::DataSnrDb:
        out.data_snr_db = value;
        break;
    case SweepAxis::NumUsers:
        out.scenario.num_users = static_cast<int>(value);
        break;
    case SweepAxis::NumPilotPositions:
        out.num_pilot_positions = static_cast<int>(value);
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v)
{
    return v && std::isfinite(*v) ? fmt(*v) : std::string{};
}

std::string fmt_or_blank(double v)
{
    return std::isfinite(v) ? fmt(v) : std::string{};
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r')
            c = c == ',' ? ';' : ' ';
    return s;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string trial_csv_row(const TrialRecord& r)
{
    std::string line;
    line += to_string(r.axis);
    line += ',' + fmt(r.value);
    line += ',' + std::to_string(r.trial);
    line += ',' + std::to_string(r.seed);
    line += ',' + r.pattern;
    line += ',' + r.selector;
    line += ',' + r.beamformer;
    line += ',' + fmt(r.nmse);
    line += ',' + fmt(r.sum_rate);
    line += ',' + fmt(r.net_rate);
    line += ',' + fmt(r.wall_time);
    line += ',' + sanitize(r.status);
    return line;
}

std::string trial_csv(const ResultTable& table)
{
    std::string out(kTrialCsvHeader);
    out += '\n';
    for (const auto& r : table.rows)
        out += trial_csv_row(r) + '\n';
    return out;
}

ResultTable parse_trial_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != split(std::string(kTrialCsvHeader), ','))
        throw std::invalid_argument("not a per-trial result CSV (header mismatch)");
    ResultTable table;
    int line_no = 1;
    auto opt = [](const std::string& s) -> std::optional<double> {
        if (s.empty())
            return std::nullopt;
        return std::stod(s);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 12)
            throw std::invalid_argument("line " + std::to_string(line_no) + " does not have 12 fields");
        try {
            TrialRecord r;
            r.axis = sweep_axis_from_string(f[0]);
            r.value = std::stod(f[1]);
            r.trial = std::stoi(f[2]);
            r.seed = std::stoull(f[3]);
            r.pattern = f[4];
            r.selector = f[5];
            r.beamformer = f[6];
            r.nmse = opt(f[7]);
            r.sum_rate = opt(f[8]);
            r.net_rate = opt(f[9]);
            r.wall_time = f[10].empty() ? 0.0 : std::stod(f[10]);
            r.status = f[11];
            table.axis = r.axis;
            table.rows.push_back(std::move(r));
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return table;
}

namespace {

struct Accumulator {
    int n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x)
    {
        ++n;
        sum += x;
        sum_sq += x * x;
    }
    double mean() const { return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN(); }
    double standard_error() const
    {
        if (n == 0)
            return std::numeric_limits<double>::quiet_NaN();
        if (n < 2)
            return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
        return std::sqrt(var / n);
    }
};

} // namespace

std::vector<SummaryRow> summarize(const ResultTable& table)
{
    struct Group {
        SummaryRow row;
        Accumulator nmse, rate, net, believed;
    };
    std::vector<Group> groups;
    std::map<std::tuple<std::string, std::string, std::string, double>, std::size_t> index;
    for (const auto& r : table.rows) {
        const auto key = std::make_tuple(r.pattern, r.selector, r.beamformer, r.value);
        auto it = index.find(key);
        if (it == index.end()) {
            Group g;
            g.row.axis = r.axis;
            g.row.value = r.value;
            g.row.pattern = r.pattern;
            g.row.selector = r.selector;
            g.row.beamformer = r.beamformer;
            it = index.emplace(key, groups.size()).first;
            groups.push_back(std::move(g));
        }
        Group& g = groups[it->second];
        ++g.row.trials;
        if (!r.ok())
            continue;
        ++g.row.ok_trials;
        // Sums are accumulated in row order, which is the deterministic sort order.
        if (r.nmse)
            g.nmse.add(*r.nmse);
        if (r.sum_rate)
            g.rate.add(*r.sum_rate);
        if (r.net_rate)
            g.net.add(*r.net_rate);
        if (r.believed_rate)
            g.believed.add(*r.believed_rate);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (auto& g : groups) {
        g.row.mean_nmse = g.nmse.mean();
        g.row.se_nmse = g.nmse.standard_error();
        g.row.mean_sum_rate = g.rate.mean();
        g.row.se_sum_rate = g.rate.standard_error();
        g.row.mean_net_rate = g.net.mean();
        g.row.se_net_rate = g.net.standard_error();
        g.row.mean_believed_rate = g.believed.mean();
        out.push_back(g.row);
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows)
{
    std::string out = "axis,value,pattern,selector,beamformer,trials,ok_trials,mean_nmse,se_nmse,"
                      "mean_sum_rate_bits,se_sum_rate_bits,mean_net_rate_bits,se_net_rate_bits,"
                      "mean_believed_rate_bits\n";
    for (const auto& r : rows) {
        out += std::string(to_string(r.axis)) + ',' + fmt(r.value) + ',' + r.pattern + ',' + r.selector + ',' +
               r.beamformer + ',' + std::to_string(r.trials) + ',' + std::to_string(r.ok_trials) + ',' +
               fmt_or_blank(r.mean_nmse) + ',' + fmt_or_blank(r.se_nmse) + ',' + fmt_or_blank(r.mean_sum_rate) +
               ',' + fmt_or_blank(r.se_sum_rate) + ',' + fmt_or_blank(r.mean_net_rate) + ',' +
               fmt_or_blank(r.se_net_rate) + ',' + fmt_or_blank(r.mean_believed_rate) + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trial pipeline

namespace {

// Sub-stream ids inside one trial.
enum Stream : std::uint64_t { kScenarioStream = 1, kPatternStream = 2, kNoiseStream = 3, kSelectionStream = 4 };

struct Scheme {
    CsiSource csi = CsiSource::Estimated;
    PatternKind pattern = PatternKind::UpaSubgrid;
    std::optional<SelectorKind> selector;
    std::optional<BeamformerKind> beamformer;

    std::string pattern_label() const
    {
        return csi == CsiSource::Perfect ? std::string("perfect") : std::string(to_string(pattern));
    }
};

struct Task {
    std::size_t scheme = 0;
    int value_index = 0;
    int trial = 0;
};

PositionAssignment select_positions(const ExperimentConfig& cfg, SelectorKind kind, const ChannelTensor& design,
                                    Rng& rng)
{
    const auto oracle = make_zf_oracle(db_to_linear(cfg.data_snr_db) * cfg.noise_power, cfg.noise_power,
                                       evenly_spaced_subcarriers(design.num_subcarriers(), cfg.selection_subcarriers));
    switch (kind) {
    case SelectorKind::Random:
        return random_select(rng, design.num_positions(), cfg.num_antennas);
    case SelectorKind::Greedy:
        return greedy_select(design, cfg.num_antennas, oracle).assignment;
    case SelectorKind::Exhaustive:
        return exhaustive_select(design, cfg.num_antennas, oracle, cfg.enumeration_limit).assignment;
    case SelectorKind::Ceo:
        return ceo_select(design, cfg.num_antennas, oracle, cfg.ceo, rng).assignment;
    }
    throw std::logic_error("unhandled selector");
}

BeamformingSolution design_beamformer(const ExperimentConfig& cfg, BeamformerKind kind, const EquivalentChannel& equiv)
{
    BeamformerConfig bf;
    bf.transmit_power = db_to_linear(cfg.data_snr_db) * cfg.noise_power;
    bf.noise_power = cfg.noise_power;
    bf.max_iterations = cfg.wmmse_max_iterations;
    bf.rate_tolerance = cfg.rate_tolerance;
    bf.variant = cfg.wmmse_variant;
    switch (kind) {
    case BeamformerKind::Zf:
        return zf(equiv, bf.transmit_power);
    case BeamformerKind::Wmmse:
        return wmmse(equiv, bf).first;
    case BeamformerKind::ParametricTIter:
    case BeamformerKind::ParametricRefined: {
        BeamformerConfig short_run = bf;
        short_run.max_iterations = cfg.parametric_iterations;
        auto params = extract_params(wmmse(equiv, short_run).second);
        if (kind == BeamformerKind::ParametricRefined)
            params = refine_params(params, equiv, bf, cfg.refine_budget);
        return build_parametric_w(params, equiv, bf.transmit_power);
    }
    }
    throw std::logic_error("unhandled beamformer");
}

TrialRecord run_trial(const ExperimentConfig& cfg, const Scheme& scheme, int value_index, int trial)
{
    const auto started = std::chrono::steady_clock::now();
    const double value = cfg.sweep_values[static_cast<std::size_t>(value_index)];
    TrialRecord rec;
    rec.axis = cfg.sweep_axis;
    rec.value = value;
    rec.value_index = value_index;
    rec.trial = trial;
    rec.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(value_index), static_cast<std::uint64_t>(trial));
    rec.pattern = scheme.pattern_label();
    rec.selector = scheme.selector ? std::string(to_string(*scheme.selector)) : std::string("-");
    rec.beamformer = scheme.beamformer ? std::string(to_string(*scheme.beamformer)) : std::string("-");

    try {
        const ExperimentConfig point = config_at(cfg, value);
        Rng scenario_rng = make_stream(rec.seed, kScenarioStream);
        const Scenario sc = sample_scenario(point.scenario, scenario_rng);
        const ChannelTensor truth = sc.tensor();

        ChannelTensor design = truth;
        int pilots_used = 0;
        if (scheme.csi == CsiSource::Estimated) {
            Rng pattern_rng = make_stream(rec.seed, kPatternStream);
            const CePattern pattern = build_ce_pattern(sc.grid, point.num_pilot_positions, scheme.pattern, pattern_rng);
            const PilotConfig pilot{db_to_linear(point.pilot_snr_db) * point.noise_power, point.noise_power};
            Rng noise_rng = make_stream(rec.seed, kNoiseStream);
            const auto obs = synthesize_pilots(truth, pattern, pilot, noise_rng);
            const Dictionary dict(sc.grid, point.dictionary_size, sc.ofdm.wavelength());
            EstimatorConfig est;
            est.num_paths = point.estimator_paths > 0 ? point.estimator_paths : point.scenario.num_paths;
            est.forward_only = point.forward_only;
            design = estimate_channel(obs, dict, pattern, pilot, est);
            rec.nmse = nmse(design, truth);
            pilots_used = pattern.size();
        } else {
            rec.nmse = 0.0;
        }

        if (scheme.selector && scheme.beamformer) {
            Rng selection_rng = make_stream(rec.seed, kSelectionStream);
            const auto assignment = select_positions(point, *scheme.selector, design, selection_rng);
            const auto design_equiv = apply_assignment(design, assignment);
            const auto true_equiv = apply_assignment(truth, assignment);
            const auto w = design_beamformer(point, *scheme.beamformer, design_equiv);
            rec.sum_rate = sum_rate(true_equiv, w, point.noise_power);
            rec.believed_rate = sum_rate(design_equiv, w, point.noise_power);
            rec.net_rate = net_rate(*rec.sum_rate, pilots_used, point.net);
        }
    } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
        rec.sum_rate.reset();
        rec.net_rate.reset();
        rec.believed_rate.reset();
    }
    if (cfg.record_wall_time)
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

std::vector<Scheme> expand_schemes(const ExperimentConfig& cfg)
{
    std::vector<Scheme> out;
    if (cfg.sweep_kind == SweepKind::Ce) {
        for (auto p : cfg.patterns)
            out.push_back({CsiSource::Estimated, p, std::nullopt, std::nullopt});
        return out;
    }
    for (auto src : cfg.csi) {
        // Perfect CSI does not depend on the probing pattern.
        const std::vector<PatternKind> patterns =
            src == CsiSource::Perfect ? std::vector<PatternKind>{PatternKind::UpaSubgrid} : cfg.patterns;
        for (auto p : patterns)
            for (auto s : cfg.selectors)
                for (auto b : cfg.beamformers)
                    out.push_back({src, p, s, b});
    }
    return out;
}

// Runs every task with `workers` threads and emits rows in task order.
ResultTable execute(const ExperimentConfig& cfg, std::ostream* stream)
{
    cfg.validate();
    const auto schemes = expand_schemes(cfg);
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < schemes.size(); ++s)
        for (int v = 0; v < static_cast<int>(cfg.sweep_values.size()); ++v)
            for (int t = 0; t < cfg.trials; ++t)
                tasks.push_back({s, v, t});

    std::vector<std::optional<TrialRecord>> results(tasks.size());
    std::mutex mutex;
    std::size_t next_emit = 0;
    std::atomic<std::size_t> next_task{0};
    if (stream) {
        *stream << kTrialCsvHeader << '\n';
        stream->flush();
    }

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next_task.fetch_add(1);
            if (i >= tasks.size())
                return;
            const Task& task = tasks[i];
            TrialRecord rec = run_trial(cfg, schemes[task.scheme], task.value_index, task.trial);
            std::lock_guard lock(mutex);
            results[i] = std::move(rec);
            while (next_emit < results.size() && results[next_emit]) {
                if (stream) {
                    *stream << trial_csv_row(*results[next_emit]) << '\n';
                    stream->flush();
                }
                ++next_emit;
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
    }

    ResultTable table;
    table.axis = cfg.sweep_axis;
    table.rows.reserve(results.size());
    for (auto& r : results)
        table.rows.push_back(std::move(*r));
    return table;
}

} // namespace

ResultTable run_ce_sweep(const ExperimentConfig& cfg, std::ostream* stream)
{
    if (cfg.sweep_axis != SweepAxis::PilotSnrDb)
        throw std::invalid_argument("a CE sweep runs over pilot_snr_db");
    ExperimentConfig c = cfg;
    c.sweep_kind = SweepKind::Ce;
    return execute(c, stream);
}

ResultTable run_rate_sweep(const ExperimentConfig& cfg, std::ostream* stream)
{
    if (cfg.sweep_axis == SweepAxis::NumPilotPositions)
        throw std::invalid_argument("rate sweeps run over data_snr_db, num_users or pilot_snr_db");
    ExperimentConfig c = cfg;
    c.sweep_kind = SweepKind::Rate;
    return execute(c, stream);
}

ResultTable run_net_rate_sweep(const ExperimentConfig& cfg, std::ostream* stream)
{
    if (cfg.sweep_axis != SweepAxis::NumPilotPositions)
        throw std::invalid_argument("a net-rate sweep runs over num_pilot_positions");
    ExperimentConfig c = cfg;
    c.sweep_kind = SweepKind::NetRate;
    return execute(c, stream);
}

ResultTable run_sweep(const ExperimentConfig& cfg, std::ostream* stream)
{
    switch (cfg.sweep_kind) {
    case SweepKind::Ce:
        return run_ce_sweep(cfg, stream);
    case SweepKind::Rate:
        return run_rate_sweep(cfg, stream);
    case SweepKind::NetRate:
        return run_net_rate_sweep(cfg, stream);
    }
    throw std::logic_error("unhandled sweep kind");
}

} // namespace maopt

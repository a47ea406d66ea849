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

// maopt command-line front end.
//
//   maopt gen      --config c.json [--seed s] [--out dir]
//   maopt estimate --config c.json --scenario s.json
//   maopt select   --config c.json --scenario s.json [--csi stem]
//   maopt beamform --config c.json --scenario s.json --assignment a.json [--csi stem]
//   maopt sweep    --config c.json [--workers n]
//   maopt report   --input trials.csv
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include "maopt/beamforming.hpp"
#include "maopt/channel_estimation.hpp"
#include "maopt/config.hpp"
#include "maopt/experiments.hpp"
#include "maopt/io.hpp"
#include "maopt/position_selection.hpp"
#include "maopt/rng.hpp"
#include "maopt/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace maopt;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    bool quiet = false;
    std::string scenario;
    std::string csi;
    std::string assignment;
    std::string input;
};

// Config problems get exit code 2; everything after a valid config is runtime.
struct ConfigFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

ExperimentConfig load_config(const Options& opt, ConfigUse use)
{
    if (opt.config.empty())
        throw ConfigFailure("--config is required");
    std::string text;
    try {
        text = io::read_text(opt.config);
    } catch (const std::exception& e) {
        throw ConfigFailure(std::string("cannot read config: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg = parse_config(text, use);
    } catch (const ConfigError& e) {
        throw ConfigFailure(e.what());
    }
    if (opt.seed) {
        cfg.base_seed = *opt.seed;
    } else if (const char* env = std::getenv("MAOPT_SEED")) {
        try {
            std::size_t used = 0;
            cfg.base_seed = std::stoull(env, &used);
            if (used != std::string(env).size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::logic_error&) {
            throw ConfigFailure(std::string("MAOPT_SEED is not an unsigned integer: ") + env);
        }
    }
    if (opt.workers > 0)
        cfg.workers = opt.workers;
    return cfg;
}

fs::path output_dir(const Options& opt)
{
    fs::path dir = "out";
    if (!opt.out.empty())
        dir = opt.out;
    else if (const char* env = std::getenv("MAOPT_OUT"); env && *env)
        dir = env;
    fs::create_directories(dir);
    return dir;
}

Scenario load_scenario(const std::string& path)
{
    if (path.empty())
        throw ConfigFailure("--scenario is required");
    return scenario_from_json(io::read_text(path));
}

// The channel used for design: an estimate when --csi is given, the truth otherwise.
ChannelTensor design_channel(const Options& opt, const Scenario& sc)
{
    ChannelTensor truth = sc.tensor();
    if (opt.csi.empty())
        return truth;
    ChannelTensor est = io::load_tensor(opt.csi);
    if (!est.same_shape(truth))
        throw std::runtime_error("CSI tensor shape does not match the scenario");
    return est;
}

void note(const Options& opt, const std::string& msg)
{
    if (!opt.quiet)
        std::cerr << msg << '\n';
}

int cmd_gen(const Options& opt)
{
    ExperimentConfig cfg = load_config(opt, ConfigUse::Scenario);
    const fs::path dir = output_dir(opt);
    Rng rng = make_stream(cfg.base_seed, 1);
    const Scenario sc = sample_scenario(cfg.scenario, rng);
    const std::string ext[] = {".json"};
    const fs::path path = io::unique_stem(dir, "scenario", ext).string() + ".json";
    io::write_text(path, scenario_to_json(sc));
    std::cout << path.string() << '\n';
    return 0;
}

int cmd_estimate(const Options& opt)
{
    ExperimentConfig cfg = load_config(opt, ConfigUse::Scenario);
    const Scenario sc = load_scenario(opt.scenario);
    const fs::path dir = output_dir(opt);
    const ChannelTensor truth = sc.tensor();

    Rng pattern_rng = make_stream(cfg.base_seed, 2);
    const CePattern pattern = build_ce_pattern(sc.grid, cfg.num_pilot_positions, cfg.patterns.front(), pattern_rng);
    const PilotConfig pilot{db_to_linear(cfg.pilot_snr_db) * cfg.noise_power, cfg.noise_power};
    Rng noise_rng = make_stream(cfg.base_seed, 3);
    const auto obs = synthesize_pilots(truth, pattern, pilot, noise_rng);
    const Dictionary dict(sc.grid, cfg.dictionary_size, sc.ofdm.wavelength());
    EstimatorConfig est_cfg;
    est_cfg.num_paths = cfg.estimator_paths > 0 ? cfg.estimator_paths : cfg.scenario.num_paths;
    est_cfg.forward_only = cfg.forward_only;
    const ChannelTensor est = estimate_channel(obs, dict, pattern, pilot, est_cfg);

    const std::string ext[] = {".bin", ".json"};
    const auto files = io::save_tensor(io::unique_stem(dir, "estimate", ext), est, cfg.base_seed);
    note(opt, "wrote " + files.data.string());
    std::cout << format_double(nmse(est, truth)) << '\n';
    return 0;
}

int cmd_select(const Options& opt)
{
    ExperimentConfig cfg = load_config(opt, ConfigUse::Scenario);
    const Scenario sc = load_scenario(opt.scenario);
    const fs::path dir = output_dir(opt);
    const ChannelTensor design = design_channel(opt, sc);
    const double pt = db_to_linear(cfg.data_snr_db) * cfg.noise_power;
    const auto oracle = make_zf_oracle(
        pt, cfg.noise_power, evenly_spaced_subcarriers(design.num_subcarriers(), cfg.selection_subcarriers));

    Rng rng = make_stream(cfg.base_seed, 4);
    const SelectorKind kind = cfg.selectors.front();
    std::optional<PositionAssignment> chosen;
    std::string trace;
    switch (kind) {
    case SelectorKind::Random:
        chosen = random_select(rng, design.num_positions(), cfg.num_antennas);
        break;
    case SelectorKind::Greedy:
        chosen = greedy_select(design, cfg.num_antennas, oracle).assignment;
        break;
    case SelectorKind::Exhaustive:
        chosen = exhaustive_select(design, cfg.num_antennas, oracle, cfg.enumeration_limit).assignment;
        break;
    case SelectorKind::Ceo: {
        auto res = ceo_select(design, cfg.num_antennas, oracle, cfg.ceo, rng);
        chosen = res.assignment;
        trace = ceo_trace_csv(res);
        break;
    }
    }
    const std::string ext[] = {".json", ".csv"};
    const fs::path stem = io::unique_stem(dir, "assignment", ext);
    io::write_text(stem.string() + ".json", io::index_list_json(chosen->positions()));
    if (!trace.empty())
        io::write_text(stem.string() + ".csv", trace);
    note(opt, "selection rate (design CSI, ZF oracle): " + format_double(oracle(design, chosen->positions())));
    std::cout << stem.string() << ".json\n";
    return 0;
}

int cmd_beamform(const Options& opt)
{
    ExperimentConfig cfg = load_config(opt, ConfigUse::Scenario);
    const Scenario sc = load_scenario(opt.scenario);
    if (opt.assignment.empty())
        throw ConfigFailure("--assignment is required");
    const fs::path dir = output_dir(opt);
    const ChannelTensor truth = sc.tensor();
    const ChannelTensor design = design_channel(opt, sc);
    const PositionAssignment assignment(io::parse_index_list(io::read_text(opt.assignment)));
    assignment.validate(design.num_positions());
    const auto design_equiv = apply_assignment(design, assignment);
    const auto true_equiv = apply_assignment(truth, assignment);

    BeamformerConfig bf;
    bf.transmit_power = db_to_linear(cfg.data_snr_db) * cfg.noise_power;
    bf.noise_power = cfg.noise_power;
    bf.max_iterations = cfg.wmmse_max_iterations;
    bf.rate_tolerance = cfg.rate_tolerance;
    bf.variant = cfg.wmmse_variant;

    const BeamformerKind kind = cfg.beamformers.front();
    BeamformingSolution w;
    int iterations = 0;
    switch (kind) {
    case BeamformerKind::Zf:
        w = zf(design_equiv, bf.transmit_power);
        break;
    case BeamformerKind::Wmmse: {
        auto [sol, state] = wmmse(design_equiv, bf);
        w = std::move(sol);
        iterations = state.iterations;
        break;
    }
    case BeamformerKind::ParametricTIter:
    case BeamformerKind::ParametricRefined: {
        BeamformerConfig short_run = bf;
        short_run.max_iterations = cfg.parametric_iterations;
        auto state = wmmse(design_equiv, short_run).second;
        iterations = state.iterations;
        auto params = extract_params(state);
        if (kind == BeamformerKind::ParametricRefined)
            params = refine_params(params, design_equiv, bf, cfg.refine_budget);
        w = build_parametric_w(params, design_equiv, bf.transmit_power);
        break;
    }
    }
    std::string scheme(to_string(kind));
    if (kind != BeamformerKind::Zf)
        scheme += std::string("/") + std::string(to_string(cfg.wmmse_variant));
    const std::string ext[] = {".bin", ".json"};
    const auto files = io::save_solution(io::unique_stem(dir, "beamformer", ext), w,
                                         {bf.transmit_power, bf.noise_power, scheme, iterations});
    note(opt, "wrote " + files.data.string());
    std::cout << format_double(sum_rate(true_equiv, w, cfg.noise_power)) << '\n';
    return 0;
}

int cmd_sweep(const Options& opt)
{
    ExperimentConfig cfg = load_config(opt, ConfigUse::Sweep);
    const fs::path dir = output_dir(opt);
    const std::string ext[] = {""};
    const fs::path run = io::unique_stem(dir, "sweep", ext);
    fs::create_directories(run);
    io::write_text(run / "config.json", config_to_json(cfg));

    std::ofstream trials(run / "trials.csv", std::ios::binary);
    if (!trials)
        throw std::runtime_error("cannot open " + (run / "trials.csv").string());
    const ResultTable table = run_sweep(cfg, &trials);
    trials.close();
    io::write_text(run / "summary.csv", summary_csv(summarize(table)));

    int failed = 0;
    for (const auto& r : table.rows)
        failed += r.ok() ? 0 : 1;
    note(opt, std::to_string(table.rows.size()) + " trials, " + std::to_string(failed) + " failed");
    std::cout << run.string() << '\n';
    return 0;
}

int cmd_report(const Options& opt)
{
    if (opt.input.empty())
        throw ConfigFailure("--input is required");
    ResultTable table;
    try {
        table = parse_trial_csv(io::read_text(opt.input));
    } catch (const std::invalid_argument& e) {
        throw ConfigFailure(e.what());
    }
    std::cout << summary_csv(summarize(table));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Channel estimation, position selection and beamforming for movable-antenna arrays"};
    app.require_subcommand(1, 1);
    Options opt;

    auto common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opt.config, "JSON configuration file");
        if (needs_config)
            c->required();
        sub->add_option("--out", opt.out, "output directory (default $MAOPT_OUT or ./out)");
        sub->add_option("--seed", opt.seed, "base seed, overrides the config and $MAOPT_SEED");
        sub->add_flag("--quiet", opt.quiet, "suppress progress messages");
    };

    auto* gen = app.add_subcommand("gen", "sample a scenario and write it as JSON");
    common(gen, true);
    auto* estimate = app.add_subcommand("estimate", "estimate the CSI of a scenario and print the NMSE");
    common(estimate, true);
    estimate->add_option("--scenario", opt.scenario, "scenario JSON")->required();
    auto* select = app.add_subcommand("select", "choose antenna positions");
    common(select, true);
    select->add_option("--scenario", opt.scenario, "scenario JSON")->required();
    select->add_option("--csi", opt.csi, "estimated tensor stem (default: true channel)");
    auto* beamform = app.add_subcommand("beamform", "design a beamformer and print the true-channel sum rate");
    common(beamform, true);
    beamform->add_option("--scenario", opt.scenario, "scenario JSON")->required();
    beamform->add_option("--assignment", opt.assignment, "assignment JSON from select")->required();
    beamform->add_option("--csi", opt.csi, "estimated tensor stem (default: true channel)");
    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep");
    common(sweep, true);
    sweep->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    auto* report = app.add_subcommand("report", "summarize a per-trial CSV");
    report->add_option("--input", opt.input, "trials.csv")->required();
    report->add_flag("--quiet", opt.quiet, "suppress progress messages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gen)
            return cmd_gen(opt);
        if (*estimate)
            return cmd_estimate(opt);
        if (*select)
            return cmd_select(opt);
        if (*beamform)
            return cmd_beamform(opt);
        if (*sweep)
            return cmd_sweep(opt);
        return cmd_report(opt);
    } catch (const ConfigFailure& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

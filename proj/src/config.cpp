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

#include "maopt/config.hpp"

#include <set>

#include <json.hpp>

namespace maopt {

namespace {

using json = nlohmann::json;

const std::set<std::string> kKnownKeys{
    "sweep_axis", "sweep_kind", "sweep_values", "trials", "base_seed", "fc_hz", "bs_hz", "nc", "n1", "n2",
    "spacing_m", "num_users", "num_antennas", "num_paths", "dictionary_size", "num_pilot_positions",
    "pilot_snr_db", "data_snr_db", "noise_power", "patterns", "csi", "selectors", "beamformers", "ceo",
    "selection_subcarriers", "enumeration_limit", "parametric_iterations", "refine_budget", "t_total",
    "estimator_paths", "forward_only", "wmmse_variant", "wmmse_max_iterations", "rate_tolerance",
    "record_wall_time", "workers"};

const char* const kScenarioKeys[] = {"fc_hz", "bs_hz", "nc", "n1", "n2", "num_users", "num_antennas", "num_paths"};
const char* const kSweepKeys[] = {"sweep_axis", "sweep_values", "trials", "base_seed"};

template <typename T>
void read(const json& doc, const char* key, T& out)
{
    auto it = doc.find(key);
    if (it == doc.end())
        return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename E, typename F>
void read_enum(const json& doc, const char* key, E& out, F from_string)
{
    std::string name;
    read(doc, key, name);
    if (name.empty())
        return;
    try {
        out = from_string(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename E, typename F>
void read_enum_list(const json& doc, const char* key, std::vector<E>& out, F from_string)
{
    if (!doc.contains(key))
        return;
    std::vector<std::string> names;
    read(doc, key, names);
    out.clear();
    for (const auto& n : names) {
        try {
            out.push_back(from_string(n));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field '") + key + "': " + e.what());
        }
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& text, ConfigUse use)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (!kKnownKeys.count(key))
            throw ConfigError("unknown field '" + key + "'");
    for (const char* key : kScenarioKeys)
        if (!doc.contains(key))
            throw ConfigError(std::string("missing required field '") + key + "'");
    if (use == ConfigUse::Sweep)
        for (const char* key : kSweepKeys)
            if (!doc.contains(key))
                throw ConfigError(std::string("missing required field '") + key + "'");

    ExperimentConfig cfg;
    read_enum(doc, "sweep_axis", cfg.sweep_axis, sweep_axis_from_string);
    cfg.sweep_kind = default_sweep_kind(cfg.sweep_axis);
    read_enum(doc, "sweep_kind", cfg.sweep_kind, sweep_kind_from_string);
    read(doc, "sweep_values", cfg.sweep_values);
    read(doc, "trials", cfg.trials);
    read(doc, "base_seed", cfg.base_seed);

    read(doc, "fc_hz", cfg.scenario.ofdm.carrier_frequency);
    read(doc, "bs_hz", cfg.scenario.ofdm.bandwidth);
    read(doc, "nc", cfg.scenario.ofdm.num_subcarriers);
    read(doc, "n1", cfg.scenario.n1);
    read(doc, "n2", cfg.scenario.n2);
    read(doc, "spacing_m", cfg.scenario.spacing);
    read(doc, "num_users", cfg.scenario.num_users);
    read(doc, "num_paths", cfg.scenario.num_paths);
    read(doc, "num_antennas", cfg.num_antennas);
    read(doc, "dictionary_size", cfg.dictionary_size);
    read(doc, "num_pilot_positions", cfg.num_pilot_positions);
    read(doc, "estimator_paths", cfg.estimator_paths);
    read(doc, "forward_only", cfg.forward_only);

    read(doc, "pilot_snr_db", cfg.pilot_snr_db);
    read(doc, "data_snr_db", cfg.data_snr_db);
    read(doc, "noise_power", cfg.noise_power);

    read_enum_list(doc, "patterns", cfg.patterns, pattern_kind_from_string);
    read_enum_list(doc, "csi", cfg.csi, csi_source_from_string);
    read_enum_list(doc, "selectors", cfg.selectors, selector_from_string);
    read_enum_list(doc, "beamformers", cfg.beamformers, beamformer_from_string);

    if (auto it = doc.find("ceo"); it != doc.end()) {
        if (!it->is_object())
            throw ConfigError("field 'ceo' must be an object");
        for (const auto& [key, value] : it->items())
            if (key != "samples" && key != "elite_fraction" && key != "smoothing" && key != "iterations")
                throw ConfigError("unknown field 'ceo." + key + "'");
        read(*it, "samples", cfg.ceo.samples);
        read(*it, "elite_fraction", cfg.ceo.elite_fraction);
        read(*it, "smoothing", cfg.ceo.smoothing);
        read(*it, "iterations", cfg.ceo.iterations);
    }
    read(doc, "selection_subcarriers", cfg.selection_subcarriers);
    read(doc, "enumeration_limit", cfg.enumeration_limit);
    read(doc, "parametric_iterations", cfg.parametric_iterations);
    read(doc, "refine_budget", cfg.refine_budget);
    read(doc, "wmmse_max_iterations", cfg.wmmse_max_iterations);
    read(doc, "rate_tolerance", cfg.rate_tolerance);
    read_enum(doc, "wmmse_variant", cfg.wmmse_variant, wmmse_variant_from_string);
    read(doc, "t_total", cfg.net.t_total);
    read(doc, "record_wall_time", cfg.record_wall_time);
    read(doc, "workers", cfg.workers);

    try {
        if (use == ConfigUse::Sweep) {
            cfg.validate();
        } else {
            cfg.scenario.ofdm.validate();
            if (cfg.scenario.n1 < 1 || cfg.scenario.n2 < 1)
                throw std::invalid_argument("grid dimensions must be at least 1");
            if (cfg.scenario.num_users < 1 || cfg.scenario.num_paths < 1)
                throw std::invalid_argument("num_users and num_paths must be at least 1");
            if (cfg.num_antennas < 1 || cfg.num_antennas > cfg.scenario.n1 * cfg.scenario.n2)
                throw std::invalid_argument("num_antennas must be in 1..N");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    nlohmann::ordered_json doc;
    auto names = [](const auto& list) {
        std::vector<std::string> out;
        for (auto e : list)
            out.emplace_back(to_string(e));
        return out;
    };
    doc["sweep_axis"] = to_string(cfg.sweep_axis);
    doc["sweep_kind"] = to_string(cfg.sweep_kind);
    doc["sweep_values"] = cfg.sweep_values;
    doc["trials"] = cfg.trials;
    doc["base_seed"] = cfg.base_seed;
    doc["fc_hz"] = cfg.scenario.ofdm.carrier_frequency;
    doc["bs_hz"] = cfg.scenario.ofdm.bandwidth;
    doc["nc"] = cfg.scenario.ofdm.num_subcarriers;
    doc["n1"] = cfg.scenario.n1;
    doc["n2"] = cfg.scenario.n2;
    doc["spacing_m"] = cfg.scenario.spacing;
    doc["num_users"] = cfg.scenario.num_users;
    doc["num_antennas"] = cfg.num_antennas;
    doc["num_paths"] = cfg.scenario.num_paths;
    doc["dictionary_size"] = cfg.dictionary_size;
    doc["num_pilot_positions"] = cfg.num_pilot_positions;
    doc["estimator_paths"] = cfg.estimator_paths;
    doc["forward_only"] = cfg.forward_only;
    doc["pilot_snr_db"] = cfg.pilot_snr_db;
    doc["data_snr_db"] = cfg.data_snr_db;
    doc["noise_power"] = cfg.noise_power;
    doc["patterns"] = names(cfg.patterns);
    doc["csi"] = names(cfg.csi);
    doc["selectors"] = names(cfg.selectors);
    doc["beamformers"] = names(cfg.beamformers);
    doc["ceo"] = {{"samples", cfg.ceo.samples},
                  {"elite_fraction", cfg.ceo.elite_fraction},
                  {"smoothing", cfg.ceo.smoothing},
                  {"iterations", cfg.ceo.iterations}};
    doc["selection_subcarriers"] = cfg.selection_subcarriers;
    doc["enumeration_limit"] = cfg.enumeration_limit;
    doc["parametric_iterations"] = cfg.parametric_iterations;
    doc["refine_budget"] = cfg.refine_budget;
    doc["wmmse_variant"] = to_string(cfg.wmmse_variant);
    doc["wmmse_max_iterations"] = cfg.wmmse_max_iterations;
    doc["rate_tolerance"] = cfg.rate_tolerance;
    doc["t_total"] = cfg.net.t_total;
    doc["record_wall_time"] = cfg.record_wall_time;
    doc["workers"] = cfg.workers;
    return doc.dump(2) + '\n';
}

} // namespace maopt

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

#ifndef MAOPT_EXPERIMENTS_HPP
#define MAOPT_EXPERIMENTS_HPP

#include "maopt/beamforming.hpp"
#include "maopt/channel_estimation.hpp"
#include "maopt/position_selection.hpp"
#include "maopt/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maopt {

enum class SweepAxis { PilotSnrDb, DataSnrDb, NumUsers, NumPilotPositions };
enum class SelectorKind { Random, Greedy, Exhaustive, Ceo };
enum class BeamformerKind { Zf, Wmmse, ParametricTIter, ParametricRefined };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(SelectorKind kind);
std::string_view to_string(BeamformerKind kind);
SweepAxis sweep_axis_from_string(std::string_view name);
SelectorKind selector_from_string(std::string_view name);
BeamformerKind beamformer_from_string(std::string_view name);

/// Which pipeline a sweep runs: estimation only, rate, or pilot-overhead net rate.
enum class SweepKind { Ce, Rate, NetRate };
std::string_view to_string(SweepKind kind);
SweepKind sweep_kind_from_string(std::string_view name);
/// Default pipeline for an axis: CE for pilot SNR, net rate for J, rate otherwise.
SweepKind default_sweep_kind(SweepAxis axis);

/// Where the selection and beamforming stages get their CSI.
enum class CsiSource { Estimated, Perfect };
std::string_view to_string(CsiSource source);
CsiSource csi_source_from_string(std::string_view name);

struct NetRateConfig {
    int t_total = 200;

    void validate() const;
};

/// Sum rate discounted by the pilot overhead: (1 - J / T_total) * R.
double net_rate(double rate, int num_pilots, const NetRateConfig& cfg);

struct ExperimentConfig {
    SweepAxis sweep_axis = SweepAxis::PilotSnrDb;
    SweepKind sweep_kind = SweepKind::Ce;
    std::vector<double> sweep_values{10.0};
    int trials = 1;
    std::uint64_t base_seed = 1;

    ScenarioParams scenario;     // N1, N2, K, L, Nc, spacing, carrier, bandwidth
    int num_antennas = 4;        // M
    int dictionary_size = 32;    // G
    int num_pilot_positions = 32; // J
    int estimator_paths = 0;     // 0: assume the true L
    bool forward_only = true;

    double pilot_snr_db = 10.0;
    double data_snr_db = 10.0;
    double noise_power = 1.0;

    std::vector<PatternKind> patterns{PatternKind::UpaSubgrid};
    std::vector<CsiSource> csi{CsiSource::Estimated};
    std::vector<SelectorKind> selectors{SelectorKind::Ceo};
    std::vector<BeamformerKind> beamformers{BeamformerKind::Wmmse};

    CeoParams ceo;
    int selection_subcarriers = 4;
    std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
    int parametric_iterations = 2;
    int refine_budget = 200;
    int wmmse_max_iterations = 1000;
    double rate_tolerance = 1e-10;
    WmmseVariant wmmse_variant = WmmseVariant::StandardAllTerms;

    NetRateConfig net;
    bool record_wall_time = false; // wall time breaks byte-identical reruns
    int workers = 1;

    void validate() const;
};

struct TrialRecord {
    SweepAxis axis = SweepAxis::PilotSnrDb;
    double value = 0.0;
    int value_index = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string pattern;
    std::string selector;
    std::string beamformer;
    std::optional<double> nmse;
    std::optional<double> sum_rate;
    std::optional<double> net_rate;
    std::optional<double> believed_rate; // rate predicted on the CSI used for design
    double wall_time = 0.0;
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

struct ResultTable {
    SweepAxis axis = SweepAxis::PilotSnrDb;
    std::vector<TrialRecord> rows;
};

inline constexpr std::string_view kTrialCsvHeader =
    "axis,value,trial,seed,pattern,selector,beamformer,nmse,sum_rate_bits,net_rate_bits,wall_time_s,status";

std::string trial_csv_row(const TrialRecord& row);
std::string trial_csv(const ResultTable& table);

struct SummaryRow {
    SweepAxis axis = SweepAxis::PilotSnrDb;
    double value = 0.0;
    std::string pattern;
    std::string selector;
    std::string beamformer;
    int trials = 0;
    int ok_trials = 0;
    double mean_nmse = 0.0;
    double se_nmse = 0.0;
    double mean_sum_rate = 0.0;
    double se_sum_rate = 0.0;
    double mean_net_rate = 0.0;
    double se_net_rate = 0.0;
    double mean_believed_rate = 0.0;
};

/// Per (scheme, value) mean and standard error over successful trials, in
/// first-appearance order of the table.
std::vector<SummaryRow> summarize(const ResultTable& table);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Parses a per-trial CSV written by trial_csv (used by the report command).
ResultTable parse_trial_csv(const std::string& text);

/// NMSE per (pattern, pilot SNR, trial). Rows sorted by pattern, value, trial.
/// When `stream` is set the header and each row are written and flushed as
/// soon as every earlier row is done.
ResultTable run_ce_sweep(const ExperimentConfig& cfg, std::ostream* stream = nullptr);

/// Sum rate on the true channel for every (csi, pattern, selector, beamformer)
/// combination over data SNR, user count or pilot SNR.
ResultTable run_rate_sweep(const ExperimentConfig& cfg, std::ostream* stream = nullptr);

/// Same pipeline swept over the number of probed positions J, scored with net_rate.
ResultTable run_net_rate_sweep(const ExperimentConfig& cfg, std::ostream* stream = nullptr);

/// Dispatches on cfg.sweep_kind.
ResultTable run_sweep(const ExperimentConfig& cfg, std::ostream* stream = nullptr);

/// Scenario parameters for one sweep point.
ExperimentConfig config_at(const ExperimentConfig& cfg, double value);

} // namespace maopt

#endif

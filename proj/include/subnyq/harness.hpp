// SPDX-License-Identifier: Apache-2.0
//
// subnyq - sub-Nyquist collocated MIMO radar simulation and recovery
// Copyright (C) 2026 The subnyq authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "subnyq/geometry.hpp"
#include "subnyq/recovery.hpp"
#include "subnyq/scene.hpp"
#include "subnyq/waveform.hpp"
#include "subnyq/xampler.hpp"

namespace subnyq {

// full: 1.25 m range cells (N_R = 12000). desk: same spectral layout, 50 m
// range cells (N_R = 300) so Monte-Carlo runs finish in seconds.
enum class Profile { Full, Desk };

std::string_view to_string(Profile profile) noexcept;
Profile parse_profile(std::string_view text);

struct ProfileParams {
    double pri = 100e-6;
    double channel_spacing = 15e6;
    double signal_band = 12e6;
    double guard = 3e6;
    double pulse_width = 4.2e-6;
    double adc_rate = 7.5e6;
    double range_cell_m = 1.25;
    double total_power = 1.0;
    std::uint64_t phase_seed = 0;
};

ProfileParams profile_params(Profile profile);

/// Everything needed to simulate and process one array mode.
struct RadarSetup {
    ArrayConfig array;
    CognitivePlan plan;
    AdcConfig adc;
    KappaSet kappa;
    RangeGrid range_grid;
    AzimuthGrid azimuth_grid;
    double sample_rate = 0.0;
    PulseBank pulses;
    DictionarySet dictionaries;
};

RadarSetup make_setup(const ArrayConfig& array, const ProfileParams& params,
                      const std::vector<Subband>& subbands = prototype_subbands());
RadarSetup make_setup(ArrayMode mode, Profile profile, std::uint64_t array_seed);

enum class SceneKind {
    Separated,      // pairs differ by >= range_sep_bins range cells or >= azimuth_sep in sine
    AzimuthSpaced,  // every pair differs by >= azimuth_sep in sine
    ClosePair,      // one pair at equal range, pair_spacing apart in sine, plus separated fill
};

struct SceneSpec {
    SceneKind kind = SceneKind::Separated;
    int num_targets = 10;
    int range_sep_bins = 3;
    double azimuth_sep = 0.05;
    double placement_step = 0.025;  // sine-of-DoA lattice the targets sit on
    double pair_spacing = 0.02;
};

/// Random on-grid scene with unit-modulus, random-phase reflectivities.
Scene generate_scene(const SceneSpec& spec, const RangeGrid& rgrid, std::uint64_t seed);

struct DetectionReport {
    std::vector<std::pair<int, int>> hits;  // (truth index, estimate index)
    std::vector<int> false_alarms;           // estimate indices
    std::vector<int> misses;                 // truth indices
    int strict_hits = 0;
};

inline constexpr int kRangeTolerance = 2;    // range cells
inline constexpr int kAzimuthTolerance = 1;  // DoA bins

/// Greedy nearest-first one-to-one matching inside the box of two range cells
/// and one azimuth bin. Truth positions are snapped to the nearest grid cell.
DetectionReport match_targets(const Scene& truth, const SparseEstimate& est, const RangeGrid& rgrid,
                              const AzimuthGrid& agrid);

struct ExperimentConfig {
    ArrayMode mode = ArrayMode::Mode2Random8x10;
    Profile profile = Profile::Desk;
    SceneSpec scene_spec;
    std::optional<Scene> scene;    // fixed scene instead of the generator
    std::optional<double> snr_db;  // none: noiseless
    int trials = 1;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> array_seed;  // defaults to seed
    int max_targets = 0;                      // 0: number of true targets
    double residual_tol = kDefaultResidualTol;
    std::optional<ProfileParams> params;      // overrides the profile's defaults
    int threads = 0;                          // 0: hardware concurrency
};

struct TrialResult {
    int trial = 0;
    int num_truth = 0;
    int num_estimates = 0;
    DetectionReport report;
    double relative_residual = 0.0;
};

struct StageCoverage {
    long synthesize = 0;
    long noise = 0;
    long channelize = 0;
    long subsample = 0;
    long extract = 0;
    long recover = 0;
    long match = 0;
};

struct MetricsRecord {
    ArrayMode mode = ArrayMode::Mode1Ula;
    Profile profile = Profile::Desk;
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
    std::vector<TrialResult> trials;
    double detection_rate = 0.0;     // hits / truths
    double strict_rate = 0.0;        // strict hits / truths
    double false_alarm_rate = 0.0;   // false alarms / estimates
    double all_detected_fraction = 0.0;  // trials with no miss
    double perfect_fraction = 0.0;       // trials with no miss and no false alarm
    StageCoverage stages;
};

MetricsRecord run_experiment(const ExperimentConfig& cfg);

/// Runs the same trials (same scene and noise seeds per trial) for each mode.
std::vector<MetricsRecord> run_comparison(const ExperimentConfig& cfg, const std::vector<ArrayMode>& modes);

struct ReductionSummary {
    double spectral_rate_factor = 0.0;          // channel Nyquist rate / ADC rate
    double bandwidth_factor_with_guards = 0.0;  // channel spacing / occupied band
    double bandwidth_factor_no_guards = 0.0;    // B_h / occupied band
    double spatial_factor = 0.0;                // (T + R) / (M + Q)
    double combined_sampling_reduction_pct = 0.0;
    double hardware_channel_reduction_pct = 0.0;  // 1 - MQ / TR
    double combined_bandwidth_factor = 0.0;       // spatial * bandwidth (with guards)
};

ReductionSummary sampling_reduction(ArrayMode mode, const CognitivePlan& plan, const AdcConfig& adc);

struct PpiPoint {
    double east = 0.0;
    double north = 0.0;
};

// r = c tau / 2 metres, s = sine of DoA: east = r s, north = r sqrt(1 - s^2).
PpiPoint ppi_point(double range_m, double sin_doa);

/// Writes `<stem>.svg` and `<stem>.csv` (one CSV row per truth target and per
/// estimate). Returns the two paths written.
std::pair<std::filesystem::path, std::filesystem::path>
emit_ppi(const DetectionReport& report, const Scene& truth, const SparseEstimate& est, const RangeGrid& rgrid,
         const AzimuthGrid& agrid, const std::filesystem::path& stem);

}  // namespace subnyq

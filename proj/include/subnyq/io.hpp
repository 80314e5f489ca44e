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
#include <string>
#include <vector>

#include "subnyq/harness.hpp"

namespace subnyq {

// Structured-text (JSON) configuration. Sections: "profile", "array",
// "waveform", "adc", "recovery", "experiment". Numeric fields carry their SI
// unit in the key name (_hz, _s, _m, _w). Profile values fill anything omitted.
struct RecoveryParams {
    int max_targets = 0;  // 0: number of true targets where known, else 10
    double residual_tol = kDefaultResidualTol;
};

struct ToolkitConfig {
    Profile profile = Profile::Desk;
    ArrayConfig array;
    ProfileParams params;
    std::vector<Subband> subbands;
    RecoveryParams recovery;
    ExperimentConfig experiment;
    std::vector<ArrayMode> modes;  // experiment modes; defaults to the array mode
};

ToolkitConfig parse_config(const std::string& json_text);
ToolkitConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ToolkitConfig& config);

RadarSetup make_setup(const ToolkitConfig& config);

// Scene files: one target per line, "range_m, sin_doa, amplitude, phase_deg";
// '#' starts a comment.
Scene parse_scene(const std::string& text, double pri);
Scene read_scene(const std::filesystem::path& path, double pri);
void write_scene(const std::filesystem::path& path, const Scene& scene);

// Interleaved little-endian float32 I/Q ("<stem>.iq", receivers back to
// back) with a "key = value" sidecar ("<stem>.hdr").
void write_iq(const std::filesystem::path& stem, const ReceivedBaseband& rx, std::uint64_t plan_hash);
ReceivedBaseband read_iq(const std::filesystem::path& stem, std::uint64_t* plan_hash = nullptr);

// Single pulse in the same format; the sidecar carries sample_rate, m, plan hash.
void write_pulse(const std::filesystem::path& stem, const BasebandPulse& pulse, std::uint64_t plan_hash);

// Binary coefficient blob: "SNQCOEF1", uint32 M, K, Q, N, int32 kappa[K],
// int32 tx[M], int32 rx[Q], then M row-major K x Q complex64 matrices.
void write_coefficients(const std::filesystem::path& path, const CoefficientSet& y);
CoefficientSet read_coefficients(const std::filesystem::path& path);
void write_coefficients_csv(const std::filesystem::path& path, const CoefficientSet& y);

// Estimate table: n, p, range_m, sin_doa, re, im.
void write_estimate_csv(const std::filesystem::path& path, const SparseEstimate& est, const RangeGrid& rgrid,
                        const AzimuthGrid& agrid);
SparseEstimate read_estimate_csv(const std::filesystem::path& path);

std::string metrics_json(const std::vector<MetricsRecord>& records);
std::string metrics_csv(const std::vector<MetricsRecord>& records);

}  // namespace subnyq

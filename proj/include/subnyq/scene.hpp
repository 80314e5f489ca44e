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
#include <limits>
#include <vector>

#include "subnyq/geometry.hpp"
#include "subnyq/types.hpp"
#include "subnyq/waveform.hpp"

namespace subnyq {

struct KappaSet;
struct CoefficientSet;

/// Swerling-0 point target.
struct Target {
    double delay = 0.0;    // tau_l, s, in [0, pri)
    double azimuth = 0.0;  // sine of DoA, in [-1, 1)
    cplx reflectivity{1.0, 0.0};

    bool operator==(const Target&) const = default;
};

struct Scene {
    std::vector<Target> targets;

    std::size_t size() const { return targets.size(); }
    bool operator==(const Scene&) const = default;
};

inline double range_to_delay(double range_m) { return 2.0 * range_m / kSpeedOfLight; }
inline double delay_to_range(double delay_s) { return kSpeedOfLight * delay_s / 2.0; }

// Throws Error{range} for a delay outside [0, pri) and Error{config} for
// duplicated (delay, azimuth) pairs or azimuths outside [-1, 1).
void validate(const Scene& scene, double pri);

/// Baseband echo at every receiver over one PRI.
struct ReceivedBaseband {
    std::vector<Samples> receivers;   // x_q, one per receiver
    double sample_rate = 0.0;
    double pri = 0.0;
    std::vector<std::uint8_t> pulse_support;  // 1 where some echo's pulse is active
};

/// Echo synthesis in the frequency domain: target delays are exact linear
/// phases over the PRI (circular), so off-grid delays are supported.
ReceivedBaseband synth_received(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                double sample_rate);
ReceivedBaseband synth_received(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                const PulseBank& bank);

/// Direct evaluation of the Fourier-coefficient model
///   y_{m,q}[k] = sum_l a_l exp(j 2 pi beta_mq theta_l) exp(-j 2 pi k tau_l / tau) exp(-j 2 pi f_m tau_l)
/// with f_m the channel origin (coefficients are indexed one-sided from the
/// channel's lower edge).
CoefficientSet oracle_coefficients(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                   const KappaSet& kappa);

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Adds circular complex white Gaussian noise. SNR is mean signal power per
/// sample over the pulse support divided by the per-sample noise variance;
/// every receiver gets the same variance.
ReceivedBaseband add_noise(const ReceivedBaseband& rx, double snr_db, std::uint64_t seed);

// Mean per-sample power over the pulse support (all receivers pooled).
double support_power(const ReceivedBaseband& rx);

}  // namespace subnyq

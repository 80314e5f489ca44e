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
#include <vector>

#include "subnyq/types.hpp"

namespace subnyq {

/// Frequency-division channel layout. Channel m occupies
/// [m * channel_spacing, m * channel_spacing + signal_band] with the guard
/// band above it, on a one-sided complex baseband [0, M * channel_spacing).
struct FdmPlan {
    int num_tx = 0;
    double channel_spacing = 0.0;  // Hz
    double signal_band = 0.0;      // B_h, Hz
    double guard = 0.0;            // Hz
    double pri = 0.0;              // tau, s
    double pulse_width = 0.0;      // s
    std::vector<double> carriers;  // channel centres f_m, Hz

    // Lower edge of channel m; the frequency of one-sided coefficient k = 0.
    double channel_origin(int m) const { return m * channel_spacing; }
    double total_bandwidth() const { return num_tx * channel_spacing; }
    // Nyquist-rate Fourier coefficients per channel, N = spacing * tau.
    int bins_per_channel() const;

    bool operator==(const FdmPlan&) const = default;
};

FdmPlan build_fdm_plan(int num_tx, double channel_spacing, double signal_band, double guard,
                       double pri, double pulse_width);

/// Frequency slice [lo, hi) relative to the channel origin, in Hz.
struct Subband {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool operator==(const Subband&) const = default;
};

/// The eight 375 kHz slices used by the prototype receiver.
std::vector<Subband> prototype_subbands();

struct CognitivePlan {
    FdmPlan base;
    std::vector<Subband> subbands;  // sorted by lo, pairwise disjoint
    double gamma = 1.0;             // in-band amplitude scale
    double total_power = 1.0;       // P_t
    std::uint64_t phase_seed = 0;

    double occupied_bandwidth() const;
    bool operator==(const CognitivePlan&) const = default;
};

/// Restricts every transmitter to `subbands` and sets
/// gamma = sqrt(B_h / sum |B_i|) so total transmit power stays P_t.
CognitivePlan build_cognitive_plan(const FdmPlan& base, std::vector<Subband> subbands,
                                   double total_power, std::uint64_t phase_seed = 0);

/// Non-cognitive plan: the single slice [0, B_h), gamma = 1.
CognitivePlan conventional_plan(const FdmPlan& base, double total_power = 1.0,
                                std::uint64_t phase_seed = 0);

/// Per-channel DFT bins k (spacing 1/tau) lying entirely inside some slice.
std::vector<int> occupied_bins(const std::vector<Subband>& subbands, double pri);

/// Stable 64-bit fingerprint of a plan, written into file headers.
std::uint64_t plan_hash(const CognitivePlan& plan);

struct BasebandPulse {
    Samples samples;  // one PRI at sample_rate
    double sample_rate = 0.0;
    int tx_index = 0;
    double pri = 0.0;
    double channel_origin = 0.0;  // Hz
};

/// Synthesises h_m(t) over one PRI. The spectrum is flat (gamma-scaled) on
/// channel m's occupied bins with a group delay that sweeps the pulse width;
/// the time signal is gated to the pulse width, band-limited back onto the
/// occupied bins and scaled to energy P_t (sum of |x[n]|^2).
BasebandPulse synth_pulse(const CognitivePlan& plan, int m, double sample_rate);
BasebandPulse synth_pulse(const FdmPlan& plan, int m, double sample_rate);

/// Sum over bins of |X[k]|^2 / N for the DFT bins whose frequency lies in
/// [band.lo, band.hi) relative to the pulse's channel origin. Over the full
/// band this equals the sample energy of the pulse (Parseval).
double spectral_power(const BasebandPulse& pulse, const Subband& band);

double pulse_energy(const BasebandPulse& pulse);

/// Pulses of every transmitter plus their full-length DFTs, reused by the
/// received-signal synthesiser and by the receiver's channel normalisation.
struct PulseBank {
    double sample_rate = 0.0;
    std::vector<BasebandPulse> pulses;
    std::vector<Samples> spectra;
};

PulseBank make_pulse_bank(const CognitivePlan& plan, double sample_rate);

// Complex-baseband sample rate covering all channels: M * channel_spacing.
double nominal_sample_rate(const FdmPlan& plan);

}  // namespace subnyq

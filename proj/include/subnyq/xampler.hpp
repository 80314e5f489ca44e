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

#include <optional>
#include <span>
#include <vector>

#include "subnyq/scene.hpp"
#include "subnyq/types.hpp"
#include "subnyq/waveform.hpp"

namespace subnyq {

/// Indices of the Fourier coefficients acquired per channel (one-sided,
/// bin spacing 1/tau) and the Nyquist coefficient count N.
struct KappaSet {
    std::vector<int> indices;
    int per_channel_n = 0;

    int size() const { return static_cast<int>(indices.size()); }
    bool operator==(const KappaSet&) const = default;
};

struct AdcConfig {
    double rate = 0.0;             // complex sample rate, Hz
    double channel_spacing = 0.0;  // Hz
};

/// Y^m matrices (K x Q) for each processed transmitter.
struct CoefficientSet {
    std::vector<CMatrix> matrices;
    KappaSet kappa;
    std::vector<int> tx_indices;  // transmitter of each matrix
    std::vector<int> rx_indices;  // receiver of each column
    int channels_processed = 0;

    int num_tx() const { return static_cast<int>(matrices.size()); }
    int num_rx() const { return static_cast<int>(rx_indices.size()); }
};

KappaSet subband_to_kappa(const CognitivePlan& plan);

/// Slice images under frequency folding mod adc.rate, in slice order. A
/// slice that straddles a multiple of the rate yields two pieces.
std::vector<Subband> folded_images(const CognitivePlan& plan, const AdcConfig& adc);

/// True iff the folded images of all slices are pairwise disjoint.
bool check_coset(const CognitivePlan& plan, const AdcConfig& adc);

/// Channelised receiver output: channels[m][q] is channel m of receiver q,
/// shifted to [0, channel_spacing) and sampled at channel_spacing.
struct ChannelBank {
    std::vector<std::vector<Samples>> channels;
    double channel_rate = 0.0;
};

/// Ideal brick-wall channelisation of every transmitter band.
ChannelBank channelize(const ReceivedBaseband& rx, const CognitivePlan& plan);

/// Keeps every D-th sample, D = channel_rate / adc.rate (must be an integer).
Samples subsample(std::span<const cplx> channel, double channel_rate, const AdcConfig& adc);

/// Fourier-series coefficients (1/N-normalised full-rate DFT values) of the
/// channel at the kappa bins, read from the low-rate DFT at k mod (rate * tau).
CVector extract_coefficients(std::span<const cplx> lowrate, const KappaSet& kappa, const AdcConfig& adc);

/// Counters of how often each receiver stage ran.
struct StageCounters {
    long channelize = 0;
    long subsample = 0;
    long extract = 0;
};

/// channelize -> subsample -> extract over the active channels, then divide
/// each coefficient by the transmitted pulse's coefficient at that bin
/// (channel alignment / normalisation). Empty active sets are an error.
CoefficientSet acquire(const ReceivedBaseband& rx, const CognitivePlan& plan, const AdcConfig& adc,
                       const KappaSet& kappa, const std::vector<int>& active_tx,
                       const std::vector<int>& active_rx, const PulseBank* bank = nullptr,
                       StageCounters* counters = nullptr);

// All transmitters and receivers active.
CoefficientSet acquire(const ReceivedBaseband& rx, const CognitivePlan& plan, const AdcConfig& adc,
                       const KappaSet& kappa, const PulseBank* bank = nullptr,
                       StageCounters* counters = nullptr);

}  // namespace subnyq

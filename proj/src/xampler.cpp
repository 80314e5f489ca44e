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

#include "subnyq/xampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "subnyq/error.hpp"

namespace subnyq {
namespace {

struct Piece {
    double lo, hi;
    std::size_t owner;
};

std::vector<Piece> fold(const std::vector<Subband>& subbands, double rate)
{
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < subbands.size(); ++i) {
        const Subband& b = subbands[i];
        if (b.width() >= rate) {
            pieces.push_back({0.0, rate, i});
            continue;
        }
        const double a = std::fmod(b.lo, rate);
        const double e = a + b.width();
        if (e <= rate) {
            pieces.push_back({a, e, i});
        } else {
            pieces.push_back({a, rate, i});
            pieces.push_back({0.0, e - rate, i});
        }
    }
    return pieces;
}

int decimation(double channel_rate, const AdcConfig& adc)
{
    if (!(adc.rate > 0.0))
        throw Error(ErrorCategory::config, "ADC rate must be positive");
    const double ratio = channel_rate / adc.rate;
    const long d = std::lround(ratio);
    if (d < 1 || std::abs(ratio - static_cast<double>(d)) > 1e-9 * ratio)
        throw Error(ErrorCategory::config, "channel rate " + std::to_string(channel_rate) +
                                               " Hz is not an integer multiple of the ADC rate " +
                                               std::to_string(adc.rate) + " Hz");
    return static_cast<int>(d);
}

// Channel m of one receiver spectrum, shifted to baseband at the channel rate.
Samples extract_channel(const Samples& full_spectrum, int m, int per_channel)
{
    const double scale = static_cast<double>(per_channel) / static_cast<double>(full_spectrum.size());
    Samples band(per_channel);
    const std::size_t offset = static_cast<std::size_t>(m) * per_channel;
    for (int k = 0; k < per_channel; ++k)
        band[k] = offset + k < full_spectrum.size() ? full_spectrum[offset + k] * scale : cplx{0.0, 0.0};
    return detail::ifft(band);
}

}  // namespace

KappaSet subband_to_kappa(const CognitivePlan& plan)
{
    KappaSet kappa;
    kappa.per_channel_n = plan.base.bins_per_channel();
    for (const Subband& b : plan.subbands)
        if (occupied_bins({b}, plan.base.pri).empty())
            throw Error(ErrorCategory::config, "subband [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                                                   ") Hz holds no complete DFT bin");
    kappa.indices = occupied_bins(plan.subbands, plan.base.pri);
    if (kappa.indices.back() >= kappa.per_channel_n)
        throw Error(ErrorCategory::config, "subband bins exceed the per-channel coefficient count");
    return kappa;
}

std::vector<Subband> folded_images(const CognitivePlan& plan, const AdcConfig& adc)
{
    std::vector<Subband> out;
    for (const Piece& p : fold(plan.subbands, adc.rate))
        out.push_back({p.lo, p.hi});
    return out;
}

bool check_coset(const CognitivePlan& plan, const AdcConfig& adc)
{
    if (!(adc.rate > 0.0))
        return false;
    const std::vector<Piece> pieces = fold(plan.subbands, adc.rate);
    constexpr double eps = 1e-6;  // Hz; touching edges do not overlap
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (pieces[i].owner == pieces[j].owner)
                continue;
            if (std::max(pieces[i].lo, pieces[j].lo) < std::min(pieces[i].hi, pieces[j].hi) - eps)
                return false;
        }
    return true;
}

ChannelBank channelize(const ReceivedBaseband& rx, const CognitivePlan& plan)
{
    const int per_channel = plan.base.bins_per_channel();
    ChannelBank bank;
    bank.channel_rate = plan.base.channel_spacing;
    bank.channels.assign(plan.base.num_tx, std::vector<Samples>(rx.receivers.size()));
    for (std::size_t q = 0; q < rx.receivers.size(); ++q) {
        const Samples spectrum = detail::fft(rx.receivers[q]);
        for (int m = 0; m < plan.base.num_tx; ++m)
            bank.channels[m][q] = extract_channel(spectrum, m, per_channel);
    }
    return bank;
}

Samples subsample(std::span<const cplx> channel, double channel_rate, const AdcConfig& adc)
{
    const int d = decimation(channel_rate, adc);
    Samples out;
    out.reserve(channel.size() / d + 1);
    for (std::size_t n = 0; n < channel.size(); n += d)
        out.push_back(channel[n]);
    return out;
}

CVector extract_coefficients(std::span<const cplx> lowrate, const KappaSet& kappa, const AdcConfig& /*adc*/)
{
    const int length = static_cast<int>(lowrate.size());
    if (length == 0)
        throw Error(ErrorCategory::config, "empty low-rate sequence");
    const Samples spectrum = detail::fft(lowrate);

    std::vector<int> owner(length, -1);
    CVector out(kappa.size());
    for (int i = 0; i < kappa.size(); ++i) {
        const int k = kappa.indices[i];
        const int folded = ((k % length) + length) % length;
        if (owner[folded] >= 0)
            throw Error(ErrorCategory::coset, "bins " + std::to_string(owner[folded]) + " and " + std::to_string(k) +
                                                  " fold onto low-rate bin " + std::to_string(folded));
        owner[folded] = k;
        out[i] = spectrum[folded] / static_cast<double>(length);
    }
    return out;
}

CoefficientSet acquire(const ReceivedBaseband& rx, const CognitivePlan& plan, const AdcConfig& adc,
                       const KappaSet& kappa, const std::vector<int>& active_tx,
                       const std::vector<int>& active_rx, const PulseBank* bank, StageCounters* counters)
{
    if (active_tx.empty() || active_rx.empty())
        throw Error(ErrorCategory::config, "acquire called with an empty active channel set");
    for (int m : active_tx)
        if (m < 0 || m >= plan.base.num_tx)
            throw Error(ErrorCategory::index, "inactive or unknown transmitter " + std::to_string(m));
    for (int q : active_rx)
        if (q < 0 || q >= static_cast<int>(rx.receivers.size()))
            throw Error(ErrorCategory::index, "unknown receiver " + std::to_string(q));

    PulseBank local;
    if (bank == nullptr || bank->sample_rate != rx.sample_rate) {
        local = make_pulse_bank(plan, rx.sample_rate);
        bank = &local;
    }

    const int per_channel = plan.base.bins_per_channel();
    const double channel_rate = plan.base.channel_spacing;
    const int total = static_cast<int>(std::lround(rx.sample_rate * rx.pri));

    CoefficientSet out;
    out.kappa = kappa;
    out.tx_indices = active_tx;
    out.rx_indices = active_rx;
    for (std::size_t i = 0; i < active_tx.size(); ++i)
        out.matrices.emplace_back(CMatrix::Zero(kappa.size(), static_cast<Eigen::Index>(active_rx.size())));

    // Transmitted pulse coefficients at the kappa bins, for alignment.
    std::vector<CVector> reference(active_tx.size(), CVector(kappa.size()));
    for (std::size_t i = 0; i < active_tx.size(); ++i) {
        const int m = active_tx[i];
        const Samples& h = bank->spectra[m];
        double peak = 0.0;
        for (int j = 0; j < kappa.size(); ++j) {
            reference[i][j] = h[static_cast<std::size_t>(m) * per_channel + kappa.indices[j]] / static_cast<double>(total);
            peak = std::max(peak, std::abs(reference[i][j]));
        }
        for (int j = 0; j < kappa.size(); ++j)
            if (std::abs(reference[i][j]) <= 1e-12 * peak || peak == 0.0)
                throw Error(ErrorCategory::numeric, "transmitter " + std::to_string(m) +
                                                        " has no energy at coefficient " +
                                                        std::to_string(kappa.indices[j]));
    }

    for (std::size_t c = 0; c < active_rx.size(); ++c) {
        const Samples spectrum = detail::fft(rx.receivers[active_rx[c]]);
        for (std::size_t i = 0; i < active_tx.size(); ++i) {
            const Samples channel = extract_channel(spectrum, active_tx[i], per_channel);
            const Samples low = subsample(channel, channel_rate, adc);
            const CVector coeffs = extract_coefficients(low, kappa, adc);
            out.matrices[i].col(static_cast<Eigen::Index>(c)) = coeffs.cwiseQuotient(reference[i]);
            if (counters) {
                ++counters->channelize;
                ++counters->subsample;
                ++counters->extract;
            }
            ++out.channels_processed;
        }
    }
    return out;
}

CoefficientSet acquire(const ReceivedBaseband& rx, const CognitivePlan& plan, const AdcConfig& adc,
                       const KappaSet& kappa, const PulseBank* bank, StageCounters* counters)
{
    std::vector<int> tx(plan.base.num_tx), rxi(rx.receivers.size());
    for (std::size_t i = 0; i < tx.size(); ++i) tx[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < rxi.size(); ++i) rxi[i] = static_cast<int>(i);
    return acquire(rx, plan, adc, kappa, tx, rxi, bank, counters);
}

}  // namespace subnyq

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

#include "subnyq/scene.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fft.hpp"
#include "subnyq/error.hpp"
#include "subnyq/xampler.hpp"

namespace subnyq {
namespace {

void check_array_matches_plan(const ArrayConfig& array, const CognitivePlan& plan)
{
    if (array.num_tx != plan.base.num_tx)
        throw Error(ErrorCategory::config, "array has " + std::to_string(array.num_tx) +
                                               " transmitters but the FDM plan has " +
                                               std::to_string(plan.base.num_tx) + " channels");
}

}  // namespace

void validate(const Scene& scene, double pri)
{
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const Target& t = scene.targets[i];
        if (!(t.delay >= 0.0 && t.delay < pri))
            throw Error(ErrorCategory::range, "target " + std::to_string(i) + " delay " + std::to_string(t.delay) +
                                                  " s is outside the unambiguous interval [0, pri)");
        if (!(t.azimuth >= -1.0 && t.azimuth < 1.0))
            throw Error(ErrorCategory::range, "target " + std::to_string(i) + " sine of DoA outside [-1, 1)");
        for (std::size_t j = 0; j < i; ++j)
            if (scene.targets[j].delay == t.delay && scene.targets[j].azimuth == t.azimuth)
                throw Error(ErrorCategory::config, "targets " + std::to_string(j) + " and " + std::to_string(i) +
                                                       " share the same (delay, azimuth)");
    }
}

ReceivedBaseband synth_received(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                double sample_rate)
{
    return synth_received(scene, array, plan, make_pulse_bank(plan, sample_rate));
}

ReceivedBaseband synth_received(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                const PulseBank& bank)
{
    check_array_matches_plan(array, plan);
    validate(scene, plan.base.pri);

    const double pri = plan.base.pri;
    const int total = static_cast<int>(std::lround(bank.sample_rate * pri));
    const int per_channel = plan.base.bins_per_channel();
    const std::vector<int> bins = occupied_bins(plan.subbands, pri);
    const std::size_t num_targets = scene.targets.size();

    ReceivedBaseband rx;
    rx.sample_rate = bank.sample_rate;
    rx.pri = pri;
    rx.pulse_support.assign(total, 0);
    const auto gate = static_cast<long>(std::lround(plan.base.pulse_width * bank.sample_rate));
    for (const Target& t : scene.targets) {
        const long start = std::lround(t.delay * bank.sample_rate);
        for (long n = 0; n < gate; ++n)
            rx.pulse_support[static_cast<std::size_t>((start + n) % total)] = 1;
    }

    // Delay phases exp(-j 2 pi k tau_l / tau) on every occupied absolute bin.
    std::vector<std::vector<cplx>> delay_phase(num_targets);
    for (std::size_t l = 0; l < num_targets; ++l) {
        auto& row = delay_phase[l];
        row.reserve(static_cast<std::size_t>(array.num_tx) * bins.size());
        for (int m = 0; m < array.num_tx; ++m)
            for (int k : bins) {
                const double abs_bin = static_cast<double>(m * per_channel + k);
                row.push_back(std::polar(1.0, -2.0 * kPi * abs_bin * scene.targets[l].delay / pri));
            }
    }

    rx.receivers.resize(array.num_rx);
    std::vector<cplx> weight(num_targets);
    for (int q = 0; q < array.num_rx; ++q) {
        Samples spectrum(total, cplx{0.0, 0.0});
        for (int m = 0; m < array.num_tx; ++m) {
            const double b = beta(array, m, q);
            for (std::size_t l = 0; l < num_targets; ++l)
                weight[l] = scene.targets[l].reflectivity *
                            std::polar(1.0, 2.0 * kPi * b * scene.targets[l].azimuth);
            const Samples& h = bank.spectra[m];
            for (std::size_t i = 0; i < bins.size(); ++i) {
                const int k = m * per_channel + bins[i];
                cplx acc{0.0, 0.0};
                const std::size_t col = static_cast<std::size_t>(m) * bins.size() + i;
                for (std::size_t l = 0; l < num_targets; ++l)
                    acc += weight[l] * delay_phase[l][col];
                spectrum[k] = h[k] * acc;
            }
        }
        rx.receivers[q] = detail::ifft(spectrum);
    }
    return rx;
}

CoefficientSet oracle_coefficients(const Scene& scene, const ArrayConfig& array, const CognitivePlan& plan,
                                   const KappaSet& kappa)
{
    check_array_matches_plan(array, plan);
    const double pri = plan.base.pri;
    CoefficientSet out;
    out.kappa = kappa;
    for (int q = 0; q < array.num_rx; ++q)
        out.rx_indices.push_back(q);
    for (int m = 0; m < array.num_tx; ++m) {
        CMatrix y = CMatrix::Zero(kappa.size(), array.num_rx);
        const double origin = plan.base.channel_origin(m);
        for (const Target& t : scene.targets) {
            const cplx carrier = std::polar(1.0, -2.0 * kPi * origin * t.delay);
            for (int q = 0; q < array.num_rx; ++q) {
                const cplx spatial = t.reflectivity * carrier * std::polar(1.0, 2.0 * kPi * beta(array, m, q) * t.azimuth);
                for (int i = 0; i < kappa.size(); ++i)
                    y(i, q) += spatial * std::polar(1.0, -2.0 * kPi * kappa.indices[i] * t.delay / pri);
            }
        }
        out.matrices.push_back(std::move(y));
        out.tx_indices.push_back(m);
    }
    return out;
}

double support_power(const ReceivedBaseband& rx)
{
    double power = 0.0;
    long count = 0;
    for (const Samples& x : rx.receivers)
        for (std::size_t n = 0; n < x.size(); ++n)
            if (n < rx.pulse_support.size() && rx.pulse_support[n]) {
                power += std::norm(x[n]);
                ++count;
            }
    return count > 0 ? power / static_cast<double>(count) : 0.0;
}

ReceivedBaseband add_noise(const ReceivedBaseband& rx, double snr_db, std::uint64_t seed)
{
    if (std::isinf(snr_db) && snr_db > 0.0)
        return rx;
    const double signal = support_power(rx);
    if (!(signal > 0.0))
        throw Error(ErrorCategory::numeric, "SNR is undefined for an all-zero signal");

    const double variance = signal / std::pow(10.0, snr_db / 10.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));

    ReceivedBaseband out = rx;
    for (Samples& x : out.receivers)
        for (cplx& v : x) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += cplx{re, im};
        }
    return out;
}

}  // namespace subnyq

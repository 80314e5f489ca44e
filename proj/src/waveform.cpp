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

#include "subnyq/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <string>

#include "fft.hpp"
#include "subnyq/error.hpp"

namespace subnyq {
namespace {

constexpr double kRelTol = 1e-9;

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-6; }

int sample_count(double sample_rate, double pri)
{
    const double n = sample_rate * pri;
    if (!near_integer(n))
        throw Error(ErrorCategory::config, "sample_rate * pri must be an integer number of samples");
    return static_cast<int>(std::lround(n));
}

class Fnv1a {
public:
    template <class T>
    void add(const T& value)
    {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &value, sizeof(T));
        for (unsigned char b : bytes) {
            hash_ ^= b;
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

int FdmPlan::bins_per_channel() const
{
    return static_cast<int>(std::lround(channel_spacing * pri));
}

FdmPlan build_fdm_plan(int num_tx, double channel_spacing, double signal_band, double guard,
                       double pri, double pulse_width)
{
    if (num_tx < 1)
        throw Error(ErrorCategory::config, "FDM plan needs at least one transmitter");
    if (!(channel_spacing > 0.0) || !(signal_band > 0.0) || guard < 0.0)
        throw Error(ErrorCategory::config, "channel spacing and signal band must be positive, guard non-negative");
    if (std::abs(signal_band + guard - channel_spacing) > kRelTol * channel_spacing)
        throw Error(ErrorCategory::config, "signal band plus guard must equal the channel spacing");
    if (!(pri > 0.0) || !(pulse_width > 0.0) || pulse_width > pri)
        throw Error(ErrorCategory::config, "pulse width must lie in (0, pri]");
    if (!near_integer(channel_spacing * pri))
        throw Error(ErrorCategory::config, "channel_spacing * pri must be an integer bin count");

    FdmPlan plan;
    plan.num_tx = num_tx;
    plan.channel_spacing = channel_spacing;
    plan.signal_band = signal_band;
    plan.guard = guard;
    plan.pri = pri;
    plan.pulse_width = pulse_width;
    plan.carriers.resize(num_tx);
    for (int m = 0; m < num_tx; ++m)
        plan.carriers[m] = m * channel_spacing + signal_band / 2.0;
    return plan;
}

std::vector<Subband> prototype_subbands()
{
    // Upper edges as published; every slice is 375 kHz wide.
    constexpr double upper_khz[] = {2000, 2530, 3420, 4250, 6030, 6880, 9010, 12690};
    std::vector<Subband> out;
    for (double hi : upper_khz)
        out.push_back({(hi - 375.0) * 1e3, hi * 1e3});
    return out;
}

double CognitivePlan::occupied_bandwidth() const
{
    return std::accumulate(subbands.begin(), subbands.end(), 0.0,
                           [](double acc, const Subband& b) { return acc + b.width(); });
}

CognitivePlan build_cognitive_plan(const FdmPlan& base, std::vector<Subband> subbands,
                                   double total_power, std::uint64_t phase_seed)
{
    if (subbands.empty())
        throw Error(ErrorCategory::config, "cognitive plan needs at least one subband");
    if (!(total_power > 0.0))
        throw Error(ErrorCategory::config, "total power must be positive");
    std::sort(subbands.begin(), subbands.end(),
              [](const Subband& a, const Subband& b) { return a.lo < b.lo; });
    const double limit = base.signal_band + base.guard;
    for (std::size_t i = 0; i < subbands.size(); ++i) {
        const Subband& b = subbands[i];
        if (b.lo < 0.0 || !(b.lo < b.hi) || b.hi > limit * (1.0 + kRelTol))
            throw Error(ErrorCategory::config, "subband [" + std::to_string(b.lo) + ", " +
                                                   std::to_string(b.hi) + ") outside the channel");
        if (i > 0 && b.lo < subbands[i - 1].hi)
            throw Error(ErrorCategory::config, "overlapping subbands");
    }

    CognitivePlan plan;
    plan.base = base;
    plan.subbands = std::move(subbands);
    plan.total_power = total_power;
    plan.phase_seed = phase_seed;
    plan.gamma = std::sqrt(base.signal_band / plan.occupied_bandwidth());
    return plan;
}

CognitivePlan conventional_plan(const FdmPlan& base, double total_power, std::uint64_t phase_seed)
{
    return build_cognitive_plan(base, {{0.0, base.signal_band}}, total_power, phase_seed);
}

std::vector<int> occupied_bins(const std::vector<Subband>& subbands, double pri)
{
    std::vector<int> bins;
    for (const Subband& b : subbands) {
        const long first = static_cast<long>(std::ceil(b.lo * pri - 1e-9));
        const long last = static_cast<long>(std::floor(b.hi * pri + 1e-9)) - 1;
        for (long k = first; k <= last; ++k)
            bins.push_back(static_cast<int>(k));
    }
    std::sort(bins.begin(), bins.end());
    bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
    return bins;
}

std::uint64_t plan_hash(const CognitivePlan& plan)
{
    Fnv1a h;
    h.add(plan.base.num_tx);
    h.add(plan.base.channel_spacing);
    h.add(plan.base.signal_band);
    h.add(plan.base.guard);
    h.add(plan.base.pri);
    h.add(plan.base.pulse_width);
    for (const Subband& b : plan.subbands) {
        h.add(b.lo);
        h.add(b.hi);
    }
    h.add(plan.total_power);
    h.add(plan.phase_seed);
    return h.value();
}

double nominal_sample_rate(const FdmPlan& plan) { return plan.total_bandwidth(); }

BasebandPulse synth_pulse(const CognitivePlan& plan, int m, double sample_rate)
{
    const FdmPlan& base = plan.base;
    if (m < 0 || m >= base.num_tx)
        throw Error(ErrorCategory::index, "invalid transmitter index " + std::to_string(m));
    if (sample_rate < base.total_bandwidth() * (1.0 - kRelTol))
        throw Error(ErrorCategory::config, "sample rate below the occupied baseband (M * channel spacing)");

    const int total = sample_count(sample_rate, base.pri);
    const int per_channel = base.bins_per_channel();
    const int offset = m * per_channel;

    std::vector<int> bins = occupied_bins(plan.subbands, base.pri);
    const int conventional_bins = static_cast<int>(std::lround(base.signal_band * base.pri));
    const double amplitude =
        plan.gamma * std::sqrt(plan.total_power * total / static_cast<double>(conventional_bins));

    // Stationary-phase design: the group delay rises linearly across the
    // occupied bins from 0 to the pulse width, so most of the energy falls
    // inside the gate.
    std::mt19937_64 rng(plan.phase_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(m) + 1);
    std::uniform_real_distribution<double> uniform_phase(0.0, 2.0 * kPi);
    double phase = uniform_phase(rng);

    Samples spectrum(total, cplx{0.0, 0.0});
    const std::size_t n_occ = bins.size();
    double prev_delay = 0.0;
    for (std::size_t i = 0; i < n_occ; ++i) {
        const double delay = base.pulse_width * (static_cast<double>(i) + 0.5) / static_cast<double>(n_occ);
        if (i > 0) {
            const double df = (bins[i] - bins[i - 1]) / base.pri;
            phase -= 2.0 * kPi * 0.5 * (delay + prev_delay) * df;
        }
        prev_delay = delay;
        spectrum[offset + bins[i]] = std::polar(amplitude, std::fmod(phase, 2.0 * kPi));
    }

    Samples x = detail::ifft(spectrum);
    const auto gate = static_cast<std::size_t>(std::lround(base.pulse_width * sample_rate));
    std::fill(x.begin() + static_cast<std::ptrdiff_t>(std::min(gate, x.size())), x.end(), cplx{0.0, 0.0});

    Samples gated = detail::fft(x);
    Samples limited(total, cplx{0.0, 0.0});
    for (int k : bins)
        limited[offset + k] = gated[offset + k];
    x = detail::ifft(limited);

    double energy = 0.0;
    for (const cplx& v : x)
        energy += std::norm(v);
    const double scale = std::sqrt(plan.total_power / energy);
    for (cplx& v : x)
        v *= scale;

    BasebandPulse pulse;
    pulse.samples = std::move(x);
    pulse.sample_rate = sample_rate;
    pulse.tx_index = m;
    pulse.pri = base.pri;
    pulse.channel_origin = base.channel_origin(m);
    return pulse;
}

BasebandPulse synth_pulse(const FdmPlan& plan, int m, double sample_rate)
{
    return synth_pulse(conventional_plan(plan), m, sample_rate);
}

double spectral_power(const BasebandPulse& pulse, const Subband& band)
{
    const Samples spectrum = detail::fft(pulse.samples);
    const double n = static_cast<double>(spectrum.size());
    double power = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double f = static_cast<double>(k) / pulse.pri - pulse.channel_origin;
        if (f >= band.lo - 1e-6 && f < band.hi - 1e-6)
            power += std::norm(spectrum[k]) / n;
    }
    return power;
}

double pulse_energy(const BasebandPulse& pulse)
{
    double e = 0.0;
    for (const cplx& v : pulse.samples)
        e += std::norm(v);
    return e;
}

PulseBank make_pulse_bank(const CognitivePlan& plan, double sample_rate)
{
    PulseBank bank;
    bank.sample_rate = sample_rate;
    for (int m = 0; m < plan.base.num_tx; ++m) {
        bank.pulses.push_back(synth_pulse(plan, m, sample_rate));
        bank.spectra.push_back(detail::fft(bank.pulses.back().samples));
    }
    return bank;
}

}  // namespace subnyq

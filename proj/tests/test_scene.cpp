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

// Covered tests:
// - Single target at the origin reproduces the sum of transmit pulses
// - Linearity of synthesis and of the coefficient model
// - Scene validation errors
// - Noise: empirical SNR, determinism, no-noise flag, undefined SNR

#include <doctest.h>

#include <cmath>
#include <random>

#include <subnyq/subnyq.hpp>

#include "support.hpp"

using namespace subnyq;

namespace {

struct Fixture {
    ArrayConfig array = build_mode(ArrayMode::Mode2Random8x10, 5);
    CognitivePlan plan = build_cognitive_plan(build_fdm_plan(8, 15e6, 12e6, 3e6, 100e-6, 4.2e-6), prototype_subbands(), 1.0);
    PulseBank bank = make_pulse_bank(plan, 120e6);
};

Scene random_scene(int count, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> cell(0, 299), az(0, 79);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    Scene s;
    while (static_cast<int>(s.size()) < count) {
        const Target t{cell(rng) * 100e-6 / 300.0, -1.0 + 2.0 * az(rng) / 80.0, std::polar(1.0, phase(rng))};
        if (std::none_of(s.targets.begin(), s.targets.end(),
                         [&](const Target& o) { return o.delay == t.delay && o.azimuth == t.azimuth; }))
            s.targets.push_back(t);
    }
    return s;
}

}  // namespace

TEST_SUITE("scene")
{
    TEST_CASE("target at zero delay and broadside sums the transmit pulses")
    {
        const Fixture f;
        Scene s;
        s.targets.push_back({0.0, 0.0, {1.0, 0.0}});
        const ReceivedBaseband rx = synth_received(s, f.array, f.plan, f.bank);
        REQUIRE(rx.receivers.size() == 10);
        Samples sum(12000, cplx{0.0, 0.0});
        double energy = 0.0;
        for (const BasebandPulse& p : f.bank.pulses)
            for (std::size_t n = 0; n < sum.size(); ++n)
                sum[n] += p.samples[n];
        for (const cplx& v : sum)
            energy += std::norm(v);
        for (const Samples& x : rx.receivers) {
            double err = 0.0;
            for (std::size_t n = 0; n < x.size(); ++n)
                err += std::norm(x[n] - sum[n]);
            CHECK(std::sqrt(err / energy) < 1e-9);
        }
        CHECK(rx.pulse_support[0] == 1);
        CHECK(rx.pulse_support[503] == 1);
        CHECK(rx.pulse_support[504] == 0);
    }

    TEST_CASE("synthesis and the coefficient model are linear in the scene")
    {
        const Fixture f;
        std::mt19937_64 rng(17);
        const Scene a = random_scene(2, rng);
        Scene b = random_scene(2, rng);
        for (Target& t : b.targets)
            t.delay = std::fmod(t.delay + 1e-6, 100e-6);
        Scene both = a;
        both.targets.insert(both.targets.end(), b.targets.begin(), b.targets.end());

        const auto xa = synth_received(a, f.array, f.plan, f.bank);
        const auto xb = synth_received(b, f.array, f.plan, f.bank);
        const auto xab = synth_received(both, f.array, f.plan, f.bank);
        for (std::size_t q = 0; q < xab.receivers.size(); ++q)
            for (std::size_t n = 0; n < xab.receivers[q].size(); n += 97)
                CHECK(std::abs(xab.receivers[q][n] - xa.receivers[q][n] - xb.receivers[q][n]) < 1e-12);

        const KappaSet kappa = subband_to_kappa(f.plan);
        const auto ya = oracle_coefficients(a, f.array, f.plan, kappa);
        const auto yb = oracle_coefficients(b, f.array, f.plan, kappa);
        const auto yab = oracle_coefficients(both, f.array, f.plan, kappa);
        for (int m = 0; m < 8; ++m)
            CHECK(test::relative_frobenius(yab.matrices[m], ya.matrices[m] + yb.matrices[m]) < 1e-12);
    }

    TEST_CASE("coefficient model of a single target")
    {
        const Fixture f;
        const KappaSet kappa = subband_to_kappa(f.plan);
        const double tau = 37 * 100e-6 / 300.0;
        const double theta = 0.35;
        const cplx alpha = std::polar(0.7, 1.1);
        Scene s;
        s.targets.push_back({tau, theta, alpha});
        const CoefficientSet y = oracle_coefficients(s, f.array, f.plan, kappa);
        REQUIRE(y.num_tx() == 8);
        REQUIRE(y.matrices[0].rows() == 296);
        for (int m : {0, 6})
            for (int q : {1, 9})
                for (int i : {0, 100, 295}) {
                    const double k = kappa.indices[i];
                    const double cycles = beta(f.array, m, q) * theta - k * tau / 100e-6 - m * 15e6 * tau;
                    const cplx expected = alpha * std::polar(1.0, 2.0 * kPi * cycles);
                    CHECK(std::abs(y.matrices[m](i, q) - expected) < 1e-9);
                }
    }

    TEST_CASE("invalid scenes")
    {
        const Fixture f;
        const auto category = [&](const Scene& s) {
            try {
                validate(s, 100e-6);
            } catch (const Error& e) {
                return static_cast<int>(e.category());
            }
            return 0;
        };
        Scene s;
        s.targets.push_back({100e-6, 0.0, {1.0, 0.0}});
        CHECK(category(s) == static_cast<int>(ErrorCategory::range));
        s.targets[0] = {-1e-9, 0.0, {1.0, 0.0}};
        CHECK(category(s) == static_cast<int>(ErrorCategory::range));
        s.targets[0] = {1e-6, 1.0, {1.0, 0.0}};
        CHECK(category(s) == static_cast<int>(ErrorCategory::range));
        s.targets[0] = {1e-6, 0.5, {1.0, 0.0}};
        s.targets.push_back(s.targets[0]);
        CHECK(category(s) == static_cast<int>(ErrorCategory::config));
        CHECK_THROWS_AS(synth_received(s, f.array, f.plan, f.bank), Error);

        Scene ok;
        ok.targets.push_back({1e-6, 0.5, {1.0, 0.0}});
        CHECK_THROWS_AS(synth_received(ok, build_mode(ArrayMode::Mode3Thinned4x5, 1), f.plan, f.bank), Error);
    }

    TEST_CASE("no-noise flag returns the input unchanged")
    {
        const Fixture f;
        std::mt19937_64 rng(3);
        const auto rx = synth_received(random_scene(3, rng), f.array, f.plan, f.bank);
        const auto out = add_noise(rx, kNoNoise, 99);
        CHECK(out.receivers == rx.receivers);
    }

    TEST_CASE("empirical SNR over 100 trials")
    {
        const ArrayConfig array = build_mode(ArrayMode::Mode3Thinned4x5, 2);
        const CognitivePlan plan =
            build_cognitive_plan(build_fdm_plan(4, 15e6, 12e6, 3e6, 100e-6, 4.2e-6), prototype_subbands(), 1.0);
        std::mt19937_64 rng(8);
        double signal = 0.0, noise = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Scene s;
            s.targets.push_back({(rng() % 300) * 100e-6 / 300.0, 0.1, {1.0, 0.0}});
            const auto rx = synth_received(s, array, plan, 60e6);
            const auto noisy = add_noise(rx, 0.0, 1000 + trial);
            signal += support_power(rx);
            double acc = 0.0;
            long count = 0;
            for (std::size_t q = 0; q < rx.receivers.size(); ++q)
                for (std::size_t n = 0; n < rx.receivers[q].size(); ++n) {
                    acc += std::norm(noisy.receivers[q][n] - rx.receivers[q][n]);
                    ++count;
                }
            noise += acc / count;
        }
        const double snr_db = 10.0 * std::log10(signal / noise);
        CHECK(std::abs(snr_db) < 0.5);
    }

    TEST_CASE("noise is deterministic per seed and needs a nonzero signal")
    {
        const Fixture f;
        std::mt19937_64 rng(4);
        const auto rx = synth_received(random_scene(1, rng), f.array, f.plan, f.bank);
        CHECK(add_noise(rx, -5.0, 12).receivers == add_noise(rx, -5.0, 12).receivers);
        CHECK(add_noise(rx, -5.0, 12).receivers != add_noise(rx, -5.0, 13).receivers);

        ReceivedBaseband silent = rx;
        for (Samples& x : silent.receivers)
            std::fill(x.begin(), x.end(), cplx{0.0, 0.0});
        try {
            add_noise(silent, 10.0, 1);
            FAIL("expected a numeric error");
        } catch (const Error& e) {
            CHECK(e.category() == ErrorCategory::numeric);
        }
    }
}

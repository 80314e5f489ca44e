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
// - Mode 1 virtual ULA layout and completeness
// - Random layouts: counts, ordering, aperture edges, determinism
// - Apertures of all modes
// - beta values and index errors
// - Azimuth grids and nearest-bin lookup
// - Mode parsing and layout validation errors

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <subnyq/subnyq.hpp>

using namespace subnyq;

TEST_SUITE("geometry")
{
    TEST_CASE("mode 1 is the classic virtual ULA")
    {
        const ArrayConfig a = build_mode(ArrayMode::Mode1Ula, 7);
        CHECK(a.rx_positions == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
        CHECK(a.tx_positions == std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70});

        std::vector<int> sums;
        for (int m = 0; m < a.num_tx; ++m)
            for (int q = 0; q < a.num_rx; ++q)
                sums.push_back(a.tx_positions[m] + a.rx_positions[q]);
        std::sort(sums.begin(), sums.end());
        std::vector<int> expected(80);
        std::iota(expected.begin(), expected.end(), 0);
        CHECK(sums == expected);
    }

    TEST_CASE("element counts and apertures per mode")
    {
        struct Row {
            ArrayMode mode;
            int m, q, slots;
            double aperture;
        };
        for (const Row& r : {Row{ArrayMode::Mode1Ula, 8, 10, 80, 1.2}, Row{ArrayMode::Mode2Random8x10, 8, 10, 80, 1.2},
                             Row{ArrayMode::Mode3Thinned4x5, 4, 5, 80, 1.2},
                             Row{ArrayMode::Mode4Thinned8x10, 8, 10, 400, 6.0}}) {
            const ArrayConfig a = build_mode(r.mode, 3);
            CHECK(a.num_tx == r.m);
            CHECK(a.num_rx == r.q);
            CHECK(a.aperture_slots == r.slots);
            CHECK(a.physical_aperture() == doctest::Approx(r.aperture).epsilon(1e-12));
        }
    }

    TEST_CASE("random layouts hold their invariants for many seeds")
    {
        for (ArrayMode mode : {ArrayMode::Mode2Random8x10, ArrayMode::Mode3Thinned4x5, ArrayMode::Mode4Thinned8x10})
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const ArrayConfig a = build_mode(mode, seed);
                REQUIRE_NOTHROW(validate(a));
                const auto holds = [&](int slot) {
                    return std::count(a.tx_positions.begin(), a.tx_positions.end(), slot) +
                               std::count(a.rx_positions.begin(), a.rx_positions.end(), slot) >
                           0;
                };
                CHECK(holds(0));
                CHECK(holds(a.aperture_slots - 1));
                CHECK(std::is_sorted(a.tx_positions.begin(), a.tx_positions.end()));
                CHECK(std::adjacent_find(a.rx_positions.begin(), a.rx_positions.end()) == a.rx_positions.end());
            }
    }

    TEST_CASE("layouts are deterministic in the seed")
    {
        CHECK(build_mode(ArrayMode::Mode3Thinned4x5, 11) == build_mode(ArrayMode::Mode3Thinned4x5, 11));
        CHECK(build_mode(ArrayMode::Mode4Thinned8x10, 11) != build_mode(ArrayMode::Mode4Thinned8x10, 12));
    }

    TEST_CASE("beta is half the position sum")
    {
        const ArrayConfig a = build_mode(ArrayMode::Mode1Ula, 0);
        CHECK(beta(a, 0, 0) == 0.0);
        CHECK(beta(a, 1, 2) == 6.0);
        CHECK(beta(a, 7, 9) == 39.5);
        CHECK_THROWS_AS(beta(a, 8, 0), Error);
        try {
            beta(a, 0, -1);
            FAIL("expected an index error");
        } catch (const Error& e) {
            CHECK(e.category() == ErrorCategory::index);
        }
    }

    TEST_CASE("azimuth grids match the angular resolution")
    {
        const AzimuthGrid g1 = azimuth_grid(build_mode(ArrayMode::Mode1Ula, 0));
        CHECK(g1.size() == 80);
        CHECK(g1.values.front() == -1.0);
        CHECK(g1.spacing() == doctest::Approx(0.025));
        CHECK(g1.values[40] == doctest::Approx(0.0));

        const AzimuthGrid g4 = azimuth_grid(build_mode(ArrayMode::Mode4Thinned8x10, 0));
        CHECK(g4.size() == 400);
        CHECK(g4.spacing() == doctest::Approx(0.005));

        CHECK(g1.nearest(0.0) == 40);
        CHECK(g1.nearest(0.012) == 40);
        CHECK(g1.nearest(0.013) == 41);
        CHECK(g1.nearest(0.999) == 0);
        CHECK(g1.nearest(-1.0) == 0);
    }

    TEST_CASE("mode names round trip and bad names are config errors")
    {
        for (ArrayMode m : kAllModes)
            CHECK(parse_mode(to_string(m)) == m);
        CHECK(parse_mode("Mode3") == ArrayMode::Mode3Thinned4x5);
        try {
            parse_mode("mode5");
            FAIL("expected a config error");
        } catch (const Error& e) {
            CHECK(e.category() == ErrorCategory::config);
        }
    }

    TEST_CASE("validate rejects broken layouts")
    {
        ArrayConfig a = build_mode(ArrayMode::Mode2Random8x10, 1);
        ArrayConfig b = a;
        b.tx_positions.back() = a.aperture_slots;
        CHECK_THROWS_AS(validate(b), Error);
        b = a;
        b.rx_positions.pop_back();
        CHECK_THROWS_AS(validate(b), Error);
        b = a;
        std::swap(b.tx_positions[0], b.tx_positions[1]);
        CHECK_THROWS_AS(validate(b), Error);
        b = a;
        b.aperture_slots = 81;
        CHECK_THROWS_AS(validate(b), Error);
    }
}

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

#include "subnyq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "subnyq/error.hpp"

namespace subnyq {
namespace {

struct ModeShape {
    int num_tx, num_rx, virtual_tx, virtual_rx;
};

ModeShape shape_of(ArrayMode mode)
{
    switch (mode) {
    case ArrayMode::Mode1Ula: return {8, 10, 8, 10};
    case ArrayMode::Mode2Random8x10: return {8, 10, 8, 10};
    case ArrayMode::Mode3Thinned4x5: return {4, 5, 8, 10};
    case ArrayMode::Mode4Thinned8x10: return {8, 10, 20, 20};
    }
    throw Error(ErrorCategory::config, "unknown array mode");
}

// Draw `count` distinct slots from [0, slots), keeping every entry of `pinned`.
std::vector<int> draw_positions(int count, int slots, std::vector<int> pinned, std::mt19937_64& rng)
{
    std::vector<int> pool;
    pool.reserve(slots);
    for (int s = 0; s < slots; ++s)
        if (std::find(pinned.begin(), pinned.end(), s) == pinned.end())
            pool.push_back(s);

    std::vector<int> chosen = std::move(pinned);
    const int needed = count - static_cast<int>(chosen.size());
    // Partial Fisher-Yates.
    for (int i = 0; i < needed; ++i) {
        std::uniform_int_distribution<int> pick(i, static_cast<int>(pool.size()) - 1);
        std::swap(pool[i], pool[pick(rng)]);
        chosen.push_back(pool[i]);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

std::string_view to_string(ArrayMode mode) noexcept
{
    switch (mode) {
    case ArrayMode::Mode1Ula: return "mode1";
    case ArrayMode::Mode2Random8x10: return "mode2";
    case ArrayMode::Mode3Thinned4x5: return "mode3";
    case ArrayMode::Mode4Thinned8x10: return "mode4";
    }
    return "unknown";
}

ArrayMode parse_mode(std::string_view text)
{
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "mode1" || t == "1" || t == "mode1ula") return ArrayMode::Mode1Ula;
    if (t == "mode2" || t == "2" || t == "mode2random8x10") return ArrayMode::Mode2Random8x10;
    if (t == "mode3" || t == "3" || t == "mode3thinned4x5") return ArrayMode::Mode3Thinned4x5;
    if (t == "mode4" || t == "4" || t == "mode4thinned8x10") return ArrayMode::Mode4Thinned8x10;
    throw Error(ErrorCategory::config, "unknown array mode '" + std::string(text) + "'");
}

ArrayConfig build_mode(ArrayMode mode, std::uint64_t seed)
{
    const ModeShape s = shape_of(mode);
    ArrayConfig cfg;
    cfg.mode = mode;
    cfg.num_tx = s.num_tx;
    cfg.num_rx = s.num_rx;
    cfg.virtual_tx = s.virtual_tx;
    cfg.virtual_rx = s.virtual_rx;
    cfg.aperture_slots = s.virtual_tx * s.virtual_rx;
    cfg.seed = seed;

    if (mode == ArrayMode::Mode1Ula) {
        // Rx at lambda/2 spacing, Tx at R lambda/2 spacing.
        cfg.rx_positions.resize(s.num_rx);
        std::iota(cfg.rx_positions.begin(), cfg.rx_positions.end(), 0);
        for (int m = 0; m < s.num_tx; ++m)
            cfg.tx_positions.push_back(m * s.virtual_rx);
        return cfg;
    }

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    const int last = cfg.aperture_slots - 1;
    std::vector<int> tx_pinned, rx_pinned;
    for (int edge : {0, last})
        (coin(rng) ? tx_pinned : rx_pinned).push_back(edge);

    cfg.tx_positions = draw_positions(s.num_tx, cfg.aperture_slots, tx_pinned, rng);
    cfg.rx_positions = draw_positions(s.num_rx, cfg.aperture_slots, rx_pinned, rng);
    return cfg;
}

void validate(const ArrayConfig& config)
{
    const auto check_list = [&](const std::vector<int>& pos, int expected, const char* what) {
        if (static_cast<int>(pos.size()) != expected)
            throw Error(ErrorCategory::config, std::string(what) + " position count does not match element count");
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (pos[i] < 0 || pos[i] >= config.aperture_slots)
                throw Error(ErrorCategory::config, std::string(what) + " position outside the aperture");
            if (i > 0 && pos[i] <= pos[i - 1])
                throw Error(ErrorCategory::config, std::string(what) + " positions must be strictly increasing");
        }
    };
    if (config.num_tx < 1 || config.num_rx < 1)
        throw Error(ErrorCategory::config, "array needs at least one Tx and one Rx element");
    if (config.aperture_slots != config.virtual_tx * config.virtual_rx)
        throw Error(ErrorCategory::config, "aperture_slots must equal T*R");
    if (!(config.wavelength > 0.0))
        throw Error(ErrorCategory::config, "wavelength must be positive");
    check_list(config.tx_positions, config.num_tx, "tx");
    check_list(config.rx_positions, config.num_rx, "rx");
}

double beta(const ArrayConfig& config, int m, int q)
{
    if (m < 0 || m >= config.num_tx || q < 0 || q >= config.num_rx)
        throw Error(ErrorCategory::index, "invalid element index (m=" + std::to_string(m) +
                                              ", q=" + std::to_string(q) + ")");
    return 0.5 * (config.tx_positions[m] + config.rx_positions[q]);
}

AzimuthGrid azimuth_grid(int cells)
{
    AzimuthGrid grid;
    grid.values.resize(cells);
    for (int p = 0; p < cells; ++p)
        grid.values[p] = -1.0 + 2.0 * p / cells;
    return grid;
}

AzimuthGrid azimuth_grid(const ArrayConfig& config)
{
    return azimuth_grid(config.aperture_slots);
}

int AzimuthGrid::nearest(double sin_doa) const
{
    const int n = static_cast<int>(values.size());
    const double step = 2.0 / n;
    const long idx = std::lround((sin_doa + 1.0) / step);
    return static_cast<int>(((idx % n) + n) % n);
}

}  // namespace subnyq

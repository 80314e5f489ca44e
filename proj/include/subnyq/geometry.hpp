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
#include <string_view>
#include <vector>

#include "subnyq/types.hpp"

namespace subnyq {

// The four array configurations of the prototype.
enum class ArrayMode {
    Mode1Ula,          // filled 8x10 virtual ULA
    Mode2Random8x10,   // 8 Tx, 10 Rx placed at random on the 8x10 aperture
    Mode3Thinned4x5,   // 4 Tx, 5 Rx on the 8x10 aperture
    Mode4Thinned8x10,  // 8 Tx, 10 Rx on a 20x20 aperture
};

inline constexpr ArrayMode kAllModes[] = {ArrayMode::Mode1Ula, ArrayMode::Mode2Random8x10,
                                          ArrayMode::Mode3Thinned4x5, ArrayMode::Mode4Thinned8x10};

std::string_view to_string(ArrayMode mode) noexcept;
// Accepts "mode1".."mode4" as well as the enumerator spellings.
ArrayMode parse_mode(std::string_view text);

/// Transmit and receive element layout. Positions are integer slot indices on
/// a lambda/2 grid spanning the equivalent virtual aperture.
struct ArrayConfig {
    ArrayMode mode = ArrayMode::Mode1Ula;
    double wavelength = kWavelength;
    int num_tx = 0;
    int num_rx = 0;
    int virtual_tx = 0;  // T of the equivalent filled array
    int virtual_rx = 0;  // R of the equivalent filled array
    std::vector<int> tx_positions;
    std::vector<int> rx_positions;
    int aperture_slots = 0;  // T * R
    std::uint64_t seed = 0;

    double physical_aperture() const { return aperture_slots * wavelength / 2.0; }
    double normalized_aperture() const { return virtual_tx * virtual_rx / 2.0; }

    bool operator==(const ArrayConfig&) const = default;
};

/// Builds the layout for a mode. Mode 1 is the classic virtual ULA; the other
/// modes draw slots uniformly without replacement, with slots 0 and
/// aperture_slots-1 each held by at least one element. Deterministic in seed.
ArrayConfig build_mode(ArrayMode mode, std::uint64_t seed);

// Throws Error{config} if the layout breaks an ArrayConfig invariant.
void validate(const ArrayConfig& config);

/// Spatial phase coefficient of the (m, q) Tx/Rx pair, (xi_m + zeta_q) / 2.
/// The phase term is exp(j 2 pi beta theta) with theta the sine of the DoA.
double beta(const ArrayConfig& config, int m, int q);

/// Sine-of-DoA grid theta_p = -1 + 2p/(T R), p = 0..T R - 1.
struct AzimuthGrid {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double spacing() const { return values.size() > 1 ? values[1] - values[0] : 2.0; }
    // Index of the nearest grid point (wrapping at +/-1).
    int nearest(double sin_doa) const;
};

AzimuthGrid azimuth_grid(const ArrayConfig& config);
AzimuthGrid azimuth_grid(int cells);

}  // namespace subnyq

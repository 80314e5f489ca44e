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

#include <cstddef>
#include <span>

#include "subnyq/types.hpp"

namespace subnyq::detail {

// Unnormalized forward DFT: X[k] = sum_n x[n] exp(-j 2 pi k n / N).
Samples fft(std::span<const cplx> x);

// Inverse DFT with the 1/N factor: x[n] = (1/N) sum_k X[k] exp(+j 2 pi k n / N).
Samples ifft(std::span<const cplx> spectrum);

}  // namespace subnyq::detail

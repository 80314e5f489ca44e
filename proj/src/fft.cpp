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

#include "fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace subnyq::detail {
namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

class Plan {
public:
    Plan(std::size_t n, int sign) : n_(n)
    {
        in_ = fftw_alloc_complex(n);
        out_ = fftw_alloc_complex(n);
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, sign, FFTW_ESTIMATE);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }

    Samples run(std::span<const cplx> x)
    {
        auto* in = reinterpret_cast<cplx*>(in_);
        std::copy(x.begin(), x.end(), in);
        fftw_execute(plan_);
        const auto* out = reinterpret_cast<const cplx*>(out_);
        return Samples(out, out + n_);
    }

private:
    std::size_t n_;
    fftw_complex* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

Plan& cached_plan(std::size_t n, int sign)
{
    thread_local std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan>> cache;
    auto& slot = cache[{n, sign}];
    if (!slot)
        slot = std::make_unique<Plan>(n, sign);
    return *slot;
}

}  // namespace

Samples fft(std::span<const cplx> x)
{
    if (x.empty())
        return {};
    return cached_plan(x.size(), FFTW_FORWARD).run(x);
}

Samples ifft(std::span<const cplx> spectrum)
{
    if (spectrum.empty())
        return {};
    Samples out = cached_plan(spectrum.size(), FFTW_BACKWARD).run(spectrum);
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (auto& v : out)
        v *= scale;
    return out;
}

}  // namespace subnyq::detail

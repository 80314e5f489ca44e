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

#include "subnyq/error.hpp"

namespace subnyq {

std::string_view to_string(ErrorCategory category) noexcept
{
    switch (category) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::index: return "index";
    case ErrorCategory::range: return "range";
    case ErrorCategory::coset: return "coset";
    case ErrorCategory::numeric: return "numeric";
    case ErrorCategory::io: return "io";
    }
    return "unknown";
}

}  // namespace subnyq

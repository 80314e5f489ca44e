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

#include <stdexcept>
#include <string>
#include <string_view>

namespace subnyq {

// Machine-readable failure classes. The CLI maps each one to its own exit code.
enum class ErrorCategory {
    config = 1,   // inconsistent parameters or malformed configuration
    index,        // element / transmitter / receiver index out of range
    range,        // ambiguous target delay or out-of-range physical value
    coset,        // folded-bin collision after subsampling
    numeric,      // rank deficiency or undefined numerical quantity
    io,           // file system or format failure
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

}  // namespace subnyq

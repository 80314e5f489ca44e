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

#include "subnyq/error.hpp"
#include "subnyq/geometry.hpp"
#include "subnyq/harness.hpp"
#include "subnyq/io.hpp"
#include "subnyq/recovery.hpp"
#include "subnyq/scene.hpp"
#include "subnyq/types.hpp"
#include "subnyq/waveform.hpp"
#include "subnyq/xampler.hpp"

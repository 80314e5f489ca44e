# SPDX-License-Identifier: Apache-2.0
#
# subnyq - sub-Nyquist collocated MIMO radar simulation and recovery
# Copyright (C) 2026 The subnyq authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Sub-Nyquist cognitive MIMO radar toolkit."""

import json as _json

from ._subnyq import (
    ArrayConfig,
    ArrayMode,
    CoefficientSet,
    Error,
    ErrorCategory,
    Estimate,
    Profile,
    ProfileParams,
    SceneKind,
    Setup,
    Subband,
    Target,
    __version__,
    acquire,
    build_mode,
    coherence,
    generate_scene,
    match,
    oracle_coefficients,
    prototype_subbands,
    parse_mode,
    ppi_point,
    recover,
    run_experiment_json,
    simulate,
)


def run_experiment(config=None, **overrides):
    """Run a Monte-Carlo experiment.

    ``config`` is a configuration dict (or JSON text) with the same sections as
    the CLI config file. Keyword overrides go into the ``experiment`` section,
    e.g. ``run_experiment(trials=5, modes=["mode1", "mode3"])``. Returns one
    metrics dict per mode.
    """
    if isinstance(config, str):
        config = _json.loads(config)
    config = dict(config or {})
    experiment = dict(config.get("experiment", {}))
    experiment.update(overrides)
    config["experiment"] = experiment
    return _json.loads(run_experiment_json(_json.dumps(config)))


__all__ = [
    "ArrayConfig",
    "ArrayMode",
    "CoefficientSet",
    "Error",
    "ErrorCategory",
    "Estimate",
    "Profile",
    "ProfileParams",
    "SceneKind",
    "Setup",
    "Subband",
    "Target",
    "acquire",
    "build_mode",
    "coherence",
    "generate_scene",
    "match",
    "oracle_coefficients",
    "prototype_subbands",
    "parse_mode",
    "ppi_point",
    "recover",
    "run_experiment",
    "simulate",
]

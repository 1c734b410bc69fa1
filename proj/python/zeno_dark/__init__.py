# Copyright 2026 The zeno-dark Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the zeno_dark simulator."""

import json as _json
from pathlib import Path as _Path

from ._core import (
    ConfigurationError,
    PhysicsError,
    continuous_dark_run,
    discrete_dark_run,
    mode_design,
    three_level_frequencies,
    zeno_spectrum,
)
from ._core import run_json as _run_json

__all__ = [
    "ConfigurationError",
    "PhysicsError",
    "continuous_dark_run",
    "discrete_dark_run",
    "mode_design",
    "run",
    "three_level_frequencies",
    "zeno_spectrum",
]


def run(scenario, command="run", out=None, tolerance_profile="default"):
    """Run a scenario (dict, JSON text or file path) and return the summary dict.

    Files are written only when `out` is given.
    """
    if isinstance(scenario, dict):
        text = _json.dumps(scenario)
    elif isinstance(scenario, _Path) or (isinstance(scenario, str) and not scenario.lstrip().startswith("{")):
        text = _Path(scenario).read_text()
    else:
        text = scenario
    summary = _run_json(text, command, None if out is None else str(out), tolerance_profile)
    return _json.loads(summary)

# Copyright 2026 The vqcshield Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Input-protected variational quantum classifiers and their adversaries."""

import json

from ._core import (
    ClosureError,
    DataError,
    DimensionCapExceeded,
    DimensionError,
    Error,
    __version__,
    emit_plot_data,
    lie_closure_dim,
    make_moons,
    model_algebra,
    model_output,
    preset_config,
    sha256_file,
    snapshot,
)
from ._core import run_experiment as _run_experiment


def preset(name="paper-repro"):
    """Named preset as a dict."""
    return json.loads(preset_config(name))


def run_experiment(config):
    """Run an experiment from a config dict; returns (files, metrics)."""
    return _run_experiment(json.dumps(config))


__all__ = [
    "ClosureError",
    "DataError",
    "DimensionCapExceeded",
    "DimensionError",
    "Error",
    "__version__",
    "emit_plot_data",
    "lie_closure_dim",
    "make_moons",
    "model_algebra",
    "model_output",
    "preset",
    "run_experiment",
    "sha256_file",
    "snapshot",
]

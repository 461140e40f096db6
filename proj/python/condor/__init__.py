# Copyright 2026 The Condor Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Drift-adaptive stream classification with model reuse."""

from ._core import (
    Adwin,
    Config,
    CondorError,
    DriftSignal,
    LossKind,
    StepSizeRule,
    dataset_names,
    fit,
    generate,
    read_csv,
    run,
    run_config,
    run_dataset,
)

__all__ = [
    "Adwin",
    "Config",
    "CondorError",
    "DriftSignal",
    "LossKind",
    "StepSizeRule",
    "dataset_names",
    "fit",
    "generate",
    "read_csv",
    "run",
    "run_config",
    "run_dataset",
]

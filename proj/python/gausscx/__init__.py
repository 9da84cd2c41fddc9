# Copyright 2026 The gausscx Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Circuit complexity of pure Gaussian states."""

from ._core import (
    GaussianState,
    GausscxError,
    VectorPotential,
    WeylFactor,
    coherent_complexity,
    complexity_generator,
    lorentz_geodesic,
    minimize_to_target,
    nonreversible_cost,
    squeezed_state,
    state_complexity,
    weyl_complexity,
)

__all__ = [
    "GaussianState",
    "GausscxError",
    "VectorPotential",
    "WeylFactor",
    "coherent_complexity",
    "complexity_generator",
    "lorentz_geodesic",
    "minimize_to_target",
    "nonreversible_cost",
    "squeezed_state",
    "state_complexity",
    "weyl_complexity",
]

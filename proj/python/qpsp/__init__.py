# Copyright 2026 The qpsp Authors
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
"""Lattice protein folding with a CVaR-trained variational circuit."""

from qpsp._core import (
    Backend,
    CodecError,
    ContactMatrix,
    DomainError,
    EnergyParams,
    Error,
    Lattice,
    ParameterError,
    ResourceError,
    average_relative_error,
    best_case_relative_error,
    cvar_cost,
    decode,
    encode,
    energy_params,
    exact_distribution,
    ground_state,
    instances,
    knn_distance,
    low_energy_spectrum,
    naive_enumerate,
    parse_lattice,
    qubit_count,
    sample,
    total_energy,
    train,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

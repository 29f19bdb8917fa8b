# Copyright 2026 The ringsim Authors
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

"""Lossy ring resonator simulations."""

import json as _json
import os as _os

from ._ringsim import (
    AddDrop,
    ConfigError,
    Coupler,
    DomainError,
    ResonantDivergenceError,
    Ring,
    RingsimError,
    UndefinedProbabilityError,
    UnitarityViolation,
    add_drop,
    audit,
    coincidence_probability,
    commutator_sum,
    continuum_commutator,
    match_rates,
    mode_names,
    noise_commutators,
    p11,
    p11_closed,
    sectors,
    single_bus,
    transfer_matrix,
)


def sweep(mode, overrides=None, workers=None):
    """Runs a sweep and returns {config, columns, rows, summary}."""
    if workers is None:
        workers = int(_os.environ.get("RINGSIM_THREADS", _os.cpu_count() or 1))
    return _json.loads(_ringsim_sweep(mode, list(overrides or []), workers))


from ._ringsim import _sweep_json as _ringsim_sweep  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]

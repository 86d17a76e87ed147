# SPDX-License-Identifier: Apache-2.0
#
# irsmimo: passive and active beamforming for IRS-assisted MIMO links
# Copyright (C) 2026 The irsmimo Authors
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
"""Python interface to the irsmimo beamforming library."""

from ._core import (
    DomainError,
    __version__,
    active_beamformer,
    build_r,
    convergence_study,
    coupled_channel,
    discrete_phase_set,
    draw_channels,
    effective_channel,
    iterative_solve,
    quantize_phases,
    run_sweep,
    run_validation,
    sdp_upper_bound,
    sdr_solve,
    solve_diag_sdp,
    spectrum_efficiency,
    steering_vector,
    vectorize_direct,
)

__all__ = [
    "DomainError",
    "__version__",
    "active_beamformer",
    "build_r",
    "convergence_study",
    "coupled_channel",
    "discrete_phase_set",
    "draw_channels",
    "effective_channel",
    "iterative_solve",
    "quantize_phases",
    "run_sweep",
    "run_validation",
    "sdp_upper_bound",
    "sdr_solve",
    "solve_diag_sdp",
    "spectrum_efficiency",
    "steering_vector",
    "vectorize_direct",
]

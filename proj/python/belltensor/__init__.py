# Copyright 2026 The belltensor Authors
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
"""Bell-locality norms, measurement compatibility and XOR games."""

import numpy as np

from ._core import (
    BellTensorError,
    IoError,
    SolverError,
    ValidationError,
    abs_sum_bound,
    biased_chsh,
    biased_chsh_closed_form,
    chsh,
    classical_bias,
    compatibility_norm,
    deformed_chsh,
    deformed_chsh_closed_form,
    epsilon_star_dual,
    epsilon_star_primal,
    gamma_threshold,
    i3322,
    is_bell_local,
    is_compatible,
    is_scaled_hadamard,
    m_bell_norm,
    named_game,
    normalize,
    quantum_bias,
    scan_biased_chsh,
    scan_deformed_chsh,
    seesaw_bias,
    uncertainty_product,
    vector_m_dual_norm,
    vector_m_norm,
    verify,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli(*coefficients):
    """Observables (c0 σ_X, c1 σ_Y, c2 σ_Z) truncated to the given coefficients."""
    if not 1 <= len(coefficients) <= 3:
        raise ValueError("pauli() takes one to three coefficients")
    return [c * s for c, s in zip(coefficients, (SIGMA_X, SIGMA_Y, SIGMA_Z))]


__all__ = [name for name in dir() if not name.startswith("_") and name != "np"]

// Copyright 2026 The belltensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "belltensor/games.hpp"
#include "belltensor/measurements.hpp"

namespace belltensor {

struct BellNormDetails {
    /// ‖A‖_M: the largest bias of M with Alice's observables fixed to A.
    double value = 0.0;
    /// λ_max[Σ_y |Σ_x M_xy A_x|], an upper bound on value.
    double abs_sum_bound = 0.0;
    /// True when a feasible state attains abs_sum_bound, so value equals it
    /// without solving an SDP.
    bool closed_form_exact = false;
    /// False for non-invertible M: the quantity is defined but not a norm.
    bool is_norm = false;
    int sdp_iterations = 0;
};

/// ‖A‖_M = sup_{ψ, ‖B_y‖ ≤ 1} ⟨ψ| Σ_xy M_xy A_x ⊗ B_y |ψ⟩.
///
/// Equivalently sup_ρ Σ_y ‖√ρ A'_y √ρ‖₁ with A'_y = Σ_x M_xy A_x. When the
/// normalized projector onto the top eigenspace of Σ_y |A'_y| attains the
/// bound λ_max[Σ_y |A'_y|] the bound is returned; otherwise the value comes
/// from the SDP
///
///     max Σ_y Tr[A'_y (S_y − T_y)]  s.t.  S_y + T_y = ρ,  Tr ρ = 1,  ρ, S_y, T_y ⪰ 0,
///
/// refined by alternating ascent started from the purification of the
/// optimal ρ. The refined value is reported when it lies between the SDP
/// primal and dual bounds.
BellNormDetails m_bell_norm_details(const MeasurementTuple &a, const GameMatrix &m);
double m_bell_norm(const MeasurementTuple &a, const GameMatrix &m);

/// λ_max[Σ_y |Σ_x M_xy A_x|].
double abs_sum_bound(const MeasurementTuple &a, const GameMatrix &m);

/// ‖p‖_M = ‖Mᵀ p‖₁.
double vector_m_norm(std::span<const double> p, const GameMatrix &m);

/// ‖p‖*_M = ‖M⁻¹ p‖_∞. Throws SingularMatrixError for non-invertible M.
double vector_m_dual_norm(std::span<const double> p, const GameMatrix &m);

/// ‖A‖_M ≤ β(M) + 1e-9.
bool is_bell_local(const MeasurementTuple &a, const GameMatrix &m);

struct SeesawOptions {
    int restarts = 20;
    int iterations = 200;
    std::uint64_t seed = 0;
    /// Stop a restart once a full round gains less than this.
    double tolerance = 1e-12;
};

struct SeesawResult {
    double value = 0.0;
    MeasurementTuple bob;
    CVector state;
    bool converged = false;
    /// Rounds used by the best restart.
    int iterations = 0;
    /// Objective after every half-step of the best restart.
    std::vector<double> trace;
    /// Largest drop between consecutive half-steps over all restarts.
    double max_decrease = 0.0;
};

/// Alternating maximization over the shared state and Bob's observables,
/// with Bob's dimension equal to Alice's. A lower bound on ‖A‖_M.
SeesawResult seesaw_bias(const MeasurementTuple &a, const GameMatrix &m, const SeesawOptions &options = {});

}  // namespace belltensor

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

#include <optional>
#include <string_view>

#include "belltensor/linalg.hpp"

namespace belltensor {

inline constexpr int kMaxEnumerationSize = 24;

/// Upper bound on the real Grothendieck constant (Krivine). Sanity bound on
/// quantum/classical bias ratios, never an equality target.
inline constexpr double kKrivineBound = 1.7823;

/// An N x N correlation Bell functional. The inverse is computed once at
/// construction; invertibility follows the real_inverse singularity test.
class GameMatrix {
   public:
    explicit GameMatrix(RMatrix m);

    Eigen::Index n() const { return m_.rows(); }
    const RMatrix &matrix() const { return m_; }
    double operator()(Eigen::Index x, Eigen::Index y) const { return m_(x, y); }
    bool invertible() const { return inverse_.has_value(); }

    /// Throws SingularMatrixError for non-invertible games.
    const RMatrix &inverse() const;

   private:
    RMatrix m_;
    std::optional<RMatrix> inverse_;
};

/// β(M) = max_{a, b ∈ {±1}ᴺ} aᵀ M b, the ℓ₁ᴺ ⊗_ε ℓ₁ᴺ norm of M.
/// Exhaustive over 2^(N−1) sign vectors; throws SizeError for N > 24.
double classical_bias(const RMatrix &m);
double classical_bias(const GameMatrix &m);

/// max_{ij} |m_ij|, the ℓ∞ᴺ ⊗_ε ℓ∞ᴺ norm.
double linf_injective_norm(const RMatrix &m);

/// M / β(M). Throws DegenerateError when β(M) = 0.
GameMatrix normalize(const GameMatrix &m);

/// ‖M⁻¹‖_{ℓ∞⊗εℓ∞} · ‖M‖_{ℓ₁⊗εℓ₁}, always ≥ √(N/2).
double uncertainty_product(const GameMatrix &m);

bool is_scaled_hadamard(const GameMatrix &m, double tol = 1e-9);

/// β*(M) via the Tsirelson relaxation: maximize Σ M_xy G_{x, N+y} over
/// 2N x 2N Gram matrices G ⪰ 0 with unit diagonal.
double quantum_bias_sdp(const GameMatrix &m);

/// ½ [[1, 1], [1, −1]].
GameMatrix chsh();
/// [[1, 1], [1, −t]].
GameMatrix deformed_chsh(double t);
/// [[pq, p(1−q)], [q(1−p), −(1−q)(1−p)]]. Requires p, q ∈ [0, 1].
GameMatrix biased_chsh(double p, double q);
/// ¼ [[1, 1, 1], [1, 1, −1], [1, −1, 0]], the correlation part of I₃₃₂₂.
GameMatrix i3322();

/// Parses "chsh", "mt:<t>", "gpq:<p>:<q>" or "i3322".
std::optional<GameMatrix> named_game(std::string_view id);

}  // namespace belltensor

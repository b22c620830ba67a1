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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "belltensor/measurements.hpp"
#include "belltensor/sdp.hpp"

namespace belltensor {

inline constexpr int kMaxCompatibilityTuple = 4;
inline constexpr double kCompatibilitySlack = 1e-7;

/// A sign vector ε ∈ {±1}ᴺ stored as a bit mask: bit x set ⇔ ε_x = −1.
struct SignVector {
    std::uint32_t bits = 0;
    int n = 0;

    int operator[](int x) const { return (bits >> x) & 1u ? -1 : 1; }
    /// "+-+" style key, one character per question.
    std::string key() const;
    static SignVector from_key(const std::string &key);
    static std::vector<SignVector> all(int n);

    friend auto operator<=>(const SignVector &, const SignVector &) = default;
};

/// A 2ᴺ-outcome POVM whose marginals reproduce a tuple of dichotomic
/// observables.
class JointPovm {
   public:
    int n() const { return n_; }
    Eigen::Index dim() const { return dim_; }
    const std::map<SignVector, HermitianMatrix> &elements() const { return elements_; }

    /// Σ_{ε: ε_x = +1} X_ε.
    HermitianMatrix marginal_effect(int x) const;

   private:
    friend JointPovm joint_povm_from_decomposition(const MeasurementTuple &,
                                                    const std::map<SignVector, HermitianMatrix> &);
    int n_ = 0;
    Eigen::Index dim_ = 0;
    std::map<SignVector, HermitianMatrix> elements_;
};

/// ε₀ = inf ε s.t. ∃ δ ⪰ 0: δ + I − Q − P ⪰ 0, Q + εI − δ ⪰ 0, P + εI − δ ⪰ 0.
double epsilon_star_primal(const HermitianMatrix &p, const HermitianMatrix &q);

/// ε* = sup Tr[X(Q + P − I)] − Tr[YQ] − Tr[PZ] s.t. X ⪯ Y + Z, Tr[Y + Z] = 1,
/// X, Y, Z ⪰ 0.
double epsilon_star_dual(const HermitianMatrix &p, const HermitianMatrix &q);

struct CompatibilityDecomposition {
    double norm = 0.0;
    /// H_ε ⪰ 0 with Σ_ε H_ε = norm · I and Σ_ε ε_x H_ε = A_x.
    std::map<SignVector, HermitianMatrix> blocks;
    SdpSolution solution;
};

/// ‖A‖_c = min t s.t. H_ε ⪰ 0, Σ_ε H_ε = tI, Σ_ε ε_x H_ε = A_x (N ≤ 4).
CompatibilityDecomposition compatibility_decomposition(const MeasurementTuple &a);
double compatibility_norm(const MeasurementTuple &a);

/// Γ(A) = 1 / ‖A‖_c. Throws DegenerateError for the zero tuple.
double gamma_threshold(const MeasurementTuple &a);

/// Γ for a pair via 1 / (1 + 2ε*) on the effects (I + A_x) / 2.
double gamma_threshold_pair(const MeasurementTuple &a);

struct CompatibilityVerdict {
    bool compatible = false;
    double norm = 0.0;
    std::optional<JointPovm> certificate;
};

/// Compatible ⇔ ‖A‖_c ≤ 1 + 1e-7; a certificate is built and re-verified
/// whenever the tuple is compatible. Throws ValidationError for ‖A‖_ε > 1.
CompatibilityVerdict is_compatible(const MeasurementTuple &a);

/// Verifies PSD elements (−1e-9), Σ = I (1e-7) and marginals (1e-6).
/// Throws CertificateError carrying per-x marginal residuals on mismatch.
JointPovm joint_povm_from_decomposition(const MeasurementTuple &a, const std::map<SignVector, HermitianMatrix> &blocks);

}  // namespace belltensor

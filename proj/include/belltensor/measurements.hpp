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

#include <span>
#include <vector>

#include "belltensor/linalg.hpp"

namespace belltensor {

inline constexpr double kObservableNormSlack = 1e-10;

HermitianMatrix sigma_x();
HermitianMatrix sigma_y();
HermitianMatrix sigma_z();

/// A dichotomic observable A = E₊ − E₋ = 2E₊ − I.
///
/// Validity (‖A‖_∞ ≤ 1) is checked on demand; parametric constructions may
/// produce out-of-range operators on purpose.
class Observable {
   public:
    explicit Observable(HermitianMatrix matrix) : matrix_(std::move(matrix)) {}

    const HermitianMatrix &matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.dim(); }
    bool is_valid() const { return operator_norm(matrix_) <= 1.0 + kObservableNormSlack; }

   private:
    HermitianMatrix matrix_;
};

/// N observables on a common Hilbert space, i.e. the tensor Σ_x e_x ⊗ A_x.
class MeasurementTuple {
   public:
    explicit MeasurementTuple(std::vector<Observable> observables);
    explicit MeasurementTuple(std::vector<HermitianMatrix> matrices);

    static MeasurementTuple zero(Eigen::Index n, Eigen::Index dim);

    Eigen::Index n() const { return static_cast<Eigen::Index>(observables_.size()); }
    Eigen::Index dim() const { return observables_.front().dim(); }
    const Observable &operator[](Eigen::Index x) const { return observables_[static_cast<size_t>(x)]; }
    std::span<const Observable> observables() const { return observables_; }

    /// max_x ‖A_x‖_∞, the injective norm on ℓ∞ᴺ ⊗ S∞.
    double injective_norm() const;
    bool is_valid() const { return injective_norm() <= 1.0 + kObservableNormSlack; }
    bool is_zero(double tol = 0.0) const;

    /// Σ_x coeffs[x] A_x.
    HermitianMatrix combine(std::span<const double> coeffs) const;

    MeasurementTuple scaled(double s) const;
    MeasurementTuple operator+(const MeasurementTuple &o) const;

   private:
    std::vector<Observable> observables_;
};

/// A = 2E − I. Throws ValidationError when E is not within [0, I] (1e-10).
Observable observable_from_effect(const HermitianMatrix &effect);

/// E = (I + A) / 2. Throws ValidationError when ‖A‖_∞ > 1 + 1e-10.
HermitianMatrix effect_from_observable(const Observable &a);

/// White-noise mixing ηE + (1 − η) I/2 on effects, i.e. A ↦ ηA.
MeasurementTuple add_noise(const MeasurementTuple &a, double eta);

/// (x σ_X, y σ_Y, z σ_Z) on a qubit.
MeasurementTuple pauli_tuple(double x, double y, double z);

}  // namespace belltensor

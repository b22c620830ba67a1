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

// Small dense semidefinite programs in standard primal form
//
//     minimize / maximize   Σ_b ⟨C_b, X_b⟩
//     subject to            Σ_b ⟨A_ib, X_b⟩ = b_i,   X_b ⪰ 0,
//
// with complex Hermitian blocks X_b and ⟨A, X⟩ = Re Tr(A X). The dual is
// expressed through multipliers y and slack blocks Z_b = C_b − Σ_i y_i A_ib.

#include <cstddef>
#include <string>
#include <vector>

#include "belltensor/linalg.hpp"

namespace belltensor {

enum class Sense { Minimize, Maximize };

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIterations, NumericalFailure };

const char *to_string(SdpStatus s);

struct SdpBlock {
    std::string label;
    Eigen::Index dim;
};

struct SdpTerm {
    std::size_t block;
    CMatrix coefficient;
};

struct SdpConstraint {
    std::vector<SdpTerm> terms;
    double rhs;
};

/// One addend of a matrix equality Σ_k scale_k · L_k(X_{block_k}) = R.
///
/// With `embed` empty the block must have the dimension of R and enters as
/// itself. With `embed` set the block must be 1x1 and enters as x · embed.
struct MatrixTerm {
    std::size_t block;
    double scale = 1.0;
    CMatrix embed = {};
};

/// Orthonormal basis of d x d Hermitian matrices for ⟨A, B⟩ = Re Tr(A B).
std::vector<CMatrix> hermitian_basis(Eigen::Index d);

class SdpProblem {
   public:
    explicit SdpProblem(Sense sense = Sense::Minimize) : sense_(sense) {}

    std::size_t add_block(std::string label, Eigen::Index dim);

    /// Adds `c` to the objective coefficient of `block`.
    void add_objective(std::size_t block, const CMatrix &c);

    void add_constraint(std::vector<SdpTerm> terms, double rhs);

    /// Expands a Hermitian matrix equality into d² real constraints.
    void add_matrix_equality(const std::vector<MatrixTerm> &terms, const CMatrix &rhs);

    Sense sense() const { return sense_; }
    const std::vector<SdpBlock> &blocks() const { return blocks_; }
    const std::vector<CMatrix> &objective() const { return objective_; }
    const std::vector<SdpConstraint> &constraints() const { return constraints_; }

    /// Throws ValidationError when a coefficient is not Hermitian or does not
    /// match its block.
    void validate() const;

   private:
    Sense sense_;
    std::vector<SdpBlock> blocks_;
    std::vector<CMatrix> objective_;
    std::vector<SdpConstraint> constraints_;
};

struct SdpResiduals {
    double primal_infeasibility = 0.0;  // ‖b − A(X)‖ / (1 + ‖b‖)
    double dual_infeasibility = 0.0;    // ‖C − Z − A*(y)‖ / (1 + ‖C‖)
    double gap = 0.0;                   // |pobj − dobj| / (1 + |pobj| + |dobj|)
};

struct SdpSolution {
    SdpStatus status = SdpStatus::MaxIterations;
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<CMatrix> block_values;
    std::vector<CMatrix> dual_slacks;
    RVector multipliers;
    SdpResiduals residuals;
    int iterations = 0;

    bool optimal() const { return status == SdpStatus::Optimal; }
};

struct SdpOptions {
    int max_iterations = 500;
    double target_tolerance = 1e-11;
    /// Largest residual still reported as optimal once progress stalls.
    double accept_tolerance = 1e-8;
    double step_fraction = 0.98;
};

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options = {});

/// Like solve() but throws SolverError unless the status is Optimal.
SdpSolution solve_or_throw(const SdpProblem &problem, const SdpOptions &options = {});

}  // namespace belltensor

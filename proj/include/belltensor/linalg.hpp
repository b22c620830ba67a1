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

#include <complex>

#include <Eigen/Dense>

namespace belltensor {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdClamp = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Dense complex self-adjoint matrix.
///
/// The checked constructor rejects inputs whose anti-Hermitian part exceeds
/// `tol * max(1, max|entry|)` and stores the symmetrized matrix (H + H*) / 2,
/// so round-off never leaks into downstream eigendecompositions.
class HermitianMatrix {
   public:
    explicit HermitianMatrix(const CMatrix &m, double tol = kHermitianTolerance);

    /// Symmetrizes without validation. For internal callers that build
    /// Hermitian matrices by construction.
    static HermitianMatrix symmetrized(const CMatrix &m);
    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix identity(Eigen::Index dim);
    static HermitianMatrix from_real(const RMatrix &m);

    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }

    HermitianMatrix &operator+=(const HermitianMatrix &o);
    HermitianMatrix &operator-=(const HermitianMatrix &o);
    HermitianMatrix &operator*=(double s);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix &b) { return a -= b; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
    friend HermitianMatrix operator-(HermitianMatrix a) { return a *= -1.0; }

   private:
    struct Unchecked {};
    HermitianMatrix(Unchecked, CMatrix m) : m_(std::move(m)) {}
    CMatrix m_;
};

/// Spectral decomposition H = V diag(values) V*, values sorted descending.
struct Eigensystem {
    RVector values;
    CMatrix vectors;
};

/// Cyclic complex Jacobi eigensolver. Throws ConvergenceError after
/// kJacobiMaxSweeps sweeps without reaching round-off level.
Eigensystem hermitian_eig(const HermitianMatrix &h);
RVector hermitian_eigenvalues(const HermitianMatrix &h);

/// |H| = V diag(|λ|) V*. Eigenvalues of magnitude below kPsdClamp are set to 0.
HermitianMatrix matrix_abs(const HermitianMatrix &h);

/// V diag(sign λ) V* with sign(0) := +1.
HermitianMatrix matrix_sign(const HermitianMatrix &h);

double lambda_max(const HermitianMatrix &h);
double lambda_min(const HermitianMatrix &h);

/// Largest |λ|, the Schatten-∞ norm.
double operator_norm(const HermitianMatrix &h);

/// Sum of |λ|, the Schatten-1 norm.
double trace_norm(const HermitianMatrix &h);

bool is_psd(const HermitianMatrix &h, double slack);

/// Inverse by Gaussian elimination with partial pivoting.
///
/// Throws ShapeError for non-square input and SingularMatrixError when
/// |det| < 1e-12 * (max|entry|)^N.
RMatrix real_inverse(const RMatrix &m);

/// True when real_inverse would succeed.
bool is_invertible(const RMatrix &m);

/// Kronecker product a ⊗ b with row index i * b.rows() + k.
CMatrix kron(const CMatrix &a, const CMatrix &b);

}  // namespace belltensor

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

#include <stdexcept>
#include <string>
#include <vector>

namespace belltensor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-Hermitian matrix, effect
/// outside [0, I], parameter out of range, ...).
class ValidationError : public Error {
   public:
    using Error::Error;
};

class ShapeError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// Problem too large for exhaustive methods.
class SizeError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// Zero game / zero tuple where a non-zero one is required.
class DegenerateError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class SingularMatrixError : public ValidationError {
   public:
    SingularMatrixError(const std::string &what, double det_estimate)
        : ValidationError(what), det_estimate_(det_estimate) {}
    double det_estimate() const noexcept { return det_estimate_; }

   private:
    double det_estimate_;
};

/// A joint POVM candidate failed re-verification.
class CertificateError : public ValidationError {
   public:
    CertificateError(const std::string &what, std::vector<double> residuals)
        : ValidationError(what), residuals_(std::move(residuals)) {}
    const std::vector<double> &residuals() const noexcept { return residuals_; }

   private:
    std::vector<double> residuals_;
};

/// Iterative numerical method did not converge.
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

/// The SDP solver ended without an optimal certificate.
class SolverError : public Error {
   public:
    SolverError(const std::string &what, double primal_residual, double dual_residual, double gap)
        : Error(what), primal_residual_(primal_residual), dual_residual_(dual_residual), gap_(gap) {}
    double primal_residual() const noexcept { return primal_residual_; }
    double dual_residual() const noexcept { return dual_residual_; }
    double gap() const noexcept { return gap_; }

   private:
    double primal_residual_;
    double dual_residual_;
    double gap_;
};

/// File could not be read or written; the message names the path.
class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace belltensor

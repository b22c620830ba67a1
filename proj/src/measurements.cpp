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

#include "belltensor/measurements.hpp"

#include <cmath>
#include <sstream>

#include "belltensor/error.hpp"

namespace belltensor {

HermitianMatrix sigma_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianMatrix(m);
}

HermitianMatrix sigma_y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return HermitianMatrix(m);
}

HermitianMatrix sigma_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianMatrix(m);
}

MeasurementTuple::MeasurementTuple(std::vector<Observable> observables) : observables_(std::move(observables)) {
    if (observables_.empty()) throw ShapeError("a measurement tuple needs at least one observable");
    for (const auto &o : observables_) {
        if (o.dim() != observables_.front().dim()) {
            throw ShapeError("all observables of a tuple must share one dimension");
        }
    }
}

namespace {
std::vector<Observable> wrap(std::vector<HermitianMatrix> matrices) {
    std::vector<Observable> out;
    out.reserve(matrices.size());
    for (auto &m : matrices) out.emplace_back(std::move(m));
    return out;
}
}  // namespace

MeasurementTuple::MeasurementTuple(std::vector<HermitianMatrix> matrices) : MeasurementTuple(wrap(std::move(matrices))) {}

MeasurementTuple MeasurementTuple::zero(Eigen::Index n, Eigen::Index dim) {
    return MeasurementTuple(std::vector<HermitianMatrix>(static_cast<size_t>(n), HermitianMatrix::zero(dim)));
}

double MeasurementTuple::injective_norm() const {
    double best = 0.0;
    for (const auto &o : observables_) best = std::max(best, operator_norm(o.matrix()));
    return best;
}

bool MeasurementTuple::is_zero(double tol) const {
    for (const auto &o : observables_) {
        if (o.matrix().matrix().cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

HermitianMatrix MeasurementTuple::combine(std::span<const double> coeffs) const {
    if (static_cast<Eigen::Index>(coeffs.size()) != n()) throw ShapeError("coefficient count does not match tuple size");
    CMatrix acc = CMatrix::Zero(dim(), dim());
    for (size_t x = 0; x < coeffs.size(); ++x) acc += coeffs[x] * observables_[x].matrix().matrix();
    return HermitianMatrix::symmetrized(acc);
}

MeasurementTuple MeasurementTuple::scaled(double s) const {
    std::vector<HermitianMatrix> out;
    out.reserve(observables_.size());
    for (const auto &o : observables_) out.push_back(s * o.matrix());
    return MeasurementTuple(std::move(out));
}

MeasurementTuple MeasurementTuple::operator+(const MeasurementTuple &o) const {
    if (o.n() != n() || o.dim() != dim()) throw ShapeError("cannot add tuples of different shapes");
    std::vector<HermitianMatrix> out;
    out.reserve(observables_.size());
    for (Eigen::Index x = 0; x < n(); ++x) out.push_back((*this)[x].matrix() + o[x].matrix());
    return MeasurementTuple(std::move(out));
}

Observable observable_from_effect(const HermitianMatrix &effect) {
    const RVector ev = hermitian_eigenvalues(effect);
    std::ostringstream bad;
    bool ok = true;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -kObservableNormSlack || ev(i) > 1.0 + kObservableNormSlack) {
            bad << (ok ? "" : ", ") << ev(i);
            ok = false;
        }
    }
    if (!ok) throw ValidationError("effect is not between 0 and I; offending eigenvalues: " + bad.str());
    return Observable(2.0 * effect - HermitianMatrix::identity(effect.dim()));
}

HermitianMatrix effect_from_observable(const Observable &a) {
    if (!a.is_valid()) {
        std::ostringstream ss;
        ss << "observable has operator norm " << operator_norm(a.matrix()) << " > 1";
        throw ValidationError(ss.str());
    }
    return 0.5 * (HermitianMatrix::identity(a.dim()) + a.matrix());
}

MeasurementTuple add_noise(const MeasurementTuple &a, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        std::ostringstream ss;
        ss << "noise parameter eta = " << eta << " outside [0, 1]";
        throw ValidationError(ss.str());
    }
    return a.scaled(eta);
}

MeasurementTuple pauli_tuple(double x, double y, double z) {
    return MeasurementTuple(std::vector<HermitianMatrix>{x * sigma_x(), y * sigma_y(), z * sigma_z()});
}

}  // namespace belltensor

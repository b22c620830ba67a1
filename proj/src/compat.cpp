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

#include "belltensor/compat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "belltensor/error.hpp"

namespace belltensor {

std::string SignVector::key() const {
    std::string s(static_cast<size_t>(n), '+');
    for (int x = 0; x < n; ++x) {
        if ((*this)[x] < 0) s[static_cast<size_t>(x)] = '-';
    }
    return s;
}

SignVector SignVector::from_key(const std::string &key) {
    if (key.empty() || key.size() > 31) throw ValidationError("sign-vector key must have 1..31 characters");
    SignVector s{0, static_cast<int>(key.size())};
    for (size_t x = 0; x < key.size(); ++x) {
        if (key[x] == '-') {
            s.bits |= 1u << x;
        } else if (key[x] != '+') {
            throw ValidationError("sign-vector key '" + key + "' may only contain '+' and '-'");
        }
    }
    return s;
}

std::vector<SignVector> SignVector::all(int n) {
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t b = 0; b < (1u << n); ++b) out.push_back({b, n});
    return out;
}

HermitianMatrix JointPovm::marginal_effect(int x) const {
    HermitianMatrix acc = HermitianMatrix::zero(dim_);
    for (const auto &[eps, e] : elements_) {
        if (eps[x] > 0) acc += e;
    }
    return acc;
}

namespace {

void check_effect(const HermitianMatrix &e, const char *name) {
    const RVector ev = hermitian_eigenvalues(e);
    if (ev(ev.size() - 1) < -kObservableNormSlack || ev(0) > 1.0 + kObservableNormSlack) {
        std::ostringstream ss;
        ss << "effect " << name << " has eigenvalues outside [0, 1]: [" << ev(ev.size() - 1) << ", " << ev(0) << "]";
        throw ValidationError(ss.str());
    }
}

void check_pair(const HermitianMatrix &p, const HermitianMatrix &q) {
    if (p.dim() != q.dim()) throw ShapeError("effects P and Q must have the same dimension");
    check_effect(p, "P");
    check_effect(q, "Q");
}

}  // namespace

double epsilon_star_primal(const HermitianMatrix &p, const HermitianMatrix &q) {
    check_pair(p, q);
    const Eigen::Index d = p.dim();
    const CMatrix id = CMatrix::Identity(d, d);
    // ε ≥ −λ_min(Q) ≥ −1, so ε = e − 1 with e ⪰ 0 as a 1x1 block.
    SdpProblem prob(Sense::Minimize);
    const auto delta = prob.add_block("delta", d);
    const auto s1 = prob.add_block("delta+I-Q-P", d);
    const auto s2 = prob.add_block("Q+eps-delta", d);
    const auto s3 = prob.add_block("P+eps-delta", d);
    const auto e = prob.add_block("eps+1", 1);
    prob.add_objective(e, CMatrix::Identity(1, 1));
    prob.add_matrix_equality({{s1, 1.0}, {delta, -1.0}}, id - q.matrix() - p.matrix());
    prob.add_matrix_equality({{s2, 1.0}, {delta, 1.0}, {e, -1.0, id}}, q.matrix() - id);
    prob.add_matrix_equality({{s3, 1.0}, {delta, 1.0}, {e, -1.0, id}}, p.matrix() - id);
    return solve_or_throw(prob).primal_value - 1.0;
}

double epsilon_star_dual(const HermitianMatrix &p, const HermitianMatrix &q) {
    check_pair(p, q);
    const Eigen::Index d = p.dim();
    const CMatrix id = CMatrix::Identity(d, d);
    SdpProblem prob(Sense::Maximize);
    const auto x = prob.add_block("X", d);
    const auto y = prob.add_block("Y", d);
    const auto z = prob.add_block("Z", d);
    const auto c = prob.add_block("Y+Z-X", d);
    prob.add_objective(x, q.matrix() + p.matrix() - id);
    prob.add_objective(y, -q.matrix());
    prob.add_objective(z, -p.matrix());
    prob.add_matrix_equality({{y, 1.0}, {z, 1.0}, {x, -1.0}, {c, -1.0}}, CMatrix::Zero(d, d));
    prob.add_constraint({{y, id}, {z, id}}, 1.0);
    return solve_or_throw(prob).primal_value;
}

CompatibilityDecomposition compatibility_decomposition(const MeasurementTuple &a) {
    const auto n = static_cast<int>(a.n());
    if (n > kMaxCompatibilityTuple) {
        throw SizeError("compatibility norm is limited to N <= " + std::to_string(kMaxCompatibilityTuple) +
                        " observables, got " + std::to_string(n));
    }
    const Eigen::Index d = a.dim();
    const auto signs = SignVector::all(n);
    CompatibilityDecomposition out;
    if (a.is_zero()) {
        for (const auto &s : signs) out.blocks.emplace(s, HermitianMatrix::zero(d));
        out.solution.status = SdpStatus::Optimal;
        return out;
    }

    SdpProblem prob(Sense::Minimize);
    std::vector<std::size_t> h;
    h.reserve(signs.size());
    for (const auto &s : signs) h.push_back(prob.add_block("H" + s.key(), d));
    const auto t = prob.add_block("t", 1);
    prob.add_objective(t, CMatrix::Identity(1, 1));

    std::vector<MatrixTerm> total;
    for (const auto b : h) total.push_back({b, 1.0});
    total.push_back({t, -1.0, CMatrix::Identity(d, d)});
    prob.add_matrix_equality(total, CMatrix::Zero(d, d));
    for (int x = 0; x < n; ++x) {
        std::vector<MatrixTerm> marginal;
        for (size_t k = 0; k < signs.size(); ++k) marginal.push_back({h[k], static_cast<double>(signs[k][x])});
        prob.add_matrix_equality(marginal, a[x].matrix().matrix());
    }

    out.solution = solve_or_throw(prob);
    out.norm = out.solution.primal_value;
    for (size_t k = 0; k < signs.size(); ++k) {
        out.blocks.emplace(signs[k], HermitianMatrix::symmetrized(out.solution.block_values[h[k]]));
    }
    return out;
}

double compatibility_norm(const MeasurementTuple &a) { return compatibility_decomposition(a).norm; }

double gamma_threshold(const MeasurementTuple &a) {
    if (a.is_zero()) throw DegenerateError("noise threshold of the zero tuple is unbounded");
    return 1.0 / compatibility_norm(a);
}

double gamma_threshold_pair(const MeasurementTuple &a) {
    if (a.n() != 2) throw ShapeError("the epsilon route to the noise threshold needs exactly two observables");
    if (a.is_zero()) throw DegenerateError("noise threshold of the zero tuple is unbounded");
    const HermitianMatrix p = effect_from_observable(a[0]);
    const HermitianMatrix q = effect_from_observable(a[1]);
    return 1.0 / (1.0 + 2.0 * epsilon_star_dual(p, q));
}

CompatibilityVerdict is_compatible(const MeasurementTuple &a) {
    if (!a.is_valid()) {
        std::ostringstream ss;
        ss << "tuple is not a collection of dichotomic observables: max ‖A_x‖ = " << a.injective_norm();
        throw ValidationError(ss.str());
    }
    const auto dec = compatibility_decomposition(a);
    CompatibilityVerdict v;
    v.norm = dec.norm;
    v.compatible = dec.norm <= 1.0 + kCompatibilitySlack;
    if (!v.compatible) return v;

    // Pad with white noise up to Σ X_ε = I; the padding cancels in every
    // marginal difference.
    const Eigen::Index d = a.dim();
    const double count = static_cast<double>(dec.blocks.size());
    std::map<SignVector, HermitianMatrix> elements;
    for (const auto &[eps, h] : dec.blocks) {
        if (dec.norm <= 1.0) {
            elements.emplace(eps, h + ((1.0 - dec.norm) / count) * HermitianMatrix::identity(d));
        } else {
            elements.emplace(eps, (1.0 / dec.norm) * h);
        }
    }
    v.certificate = joint_povm_from_decomposition(a, elements);
    return v;
}

JointPovm joint_povm_from_decomposition(const MeasurementTuple &a, const std::map<SignVector, HermitianMatrix> &blocks) {
    const auto n = static_cast<int>(a.n());
    const Eigen::Index d = a.dim();
    if (blocks.size() != (std::size_t{1} << n)) {
        throw CertificateError("expected " + std::to_string(std::size_t{1} << n) + " POVM elements, got " +
                                   std::to_string(blocks.size()),
                               {});
    }
    HermitianMatrix total = HermitianMatrix::zero(d);
    for (const auto &[eps, e] : blocks) {
        if (eps.n != n || e.dim() != d) throw CertificateError("POVM element " + eps.key() + " has the wrong shape", {});
        const double lmin = lambda_min(e);
        if (lmin < -1e-9) {
            std::ostringstream ss;
            ss << "POVM element " << eps.key() << " is not positive semidefinite (λ_min = " << lmin << ")";
            throw CertificateError(ss.str(), {lmin});
        }
        total += e;
    }
    const double sum_err = (total.matrix() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (sum_err > 1e-7) {
        std::ostringstream ss;
        ss << "POVM elements do not sum to the identity (max deviation " << sum_err << ")";
        throw CertificateError(ss.str(), {sum_err});
    }

    JointPovm povm;
    povm.n_ = n;
    povm.dim_ = d;
    povm.elements_ = blocks;
    std::vector<double> residuals;
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
        const HermitianMatrix target = effect_from_observable(a[x]);
        const double r = (povm.marginal_effect(x).matrix() - target.matrix()).cwiseAbs().maxCoeff();
        residuals.push_back(r);
        worst = std::max(worst, r);
    }
    if (worst > 1e-6) {
        std::ostringstream ss;
        ss << "joint POVM marginals do not reproduce the tuple; residuals:";
        for (const double r : residuals) ss << ' ' << r;
        throw CertificateError(ss.str(), residuals);
    }
    return povm;
}

}  // namespace belltensor

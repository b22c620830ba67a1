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

#include "belltensor/bellnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "belltensor/error.hpp"
#include "belltensor/parallel.hpp"
#include "belltensor/sdp.hpp"

namespace belltensor {

namespace {

constexpr int kPolishIterations = 2000;

void check_shapes(const MeasurementTuple &a, const GameMatrix &m) {
    if (a.n() != m.n()) {
        std::ostringstream ss;
        ss << "tuple has " << a.n() << " observables but the game has " << m.n() << " questions";
        throw ShapeError(ss.str());
    }
}

// A'_y = Σ_x M_xy A_x.
std::vector<HermitianMatrix> contract(const MeasurementTuple &a, const GameMatrix &m) {
    check_shapes(a, m);
    std::vector<HermitianMatrix> out;
    out.reserve(static_cast<size_t>(m.n()));
    for (Eigen::Index y = 0; y < m.n(); ++y) {
        const RVector col = m.matrix().col(y);
        out.push_back(a.combine(std::span<const double>(col.data(), static_cast<size_t>(col.size()))));
    }
    return out;
}

struct SdpBound {
    double primal = 0.0;
    double dual = 0.0;
    CMatrix rho;
    int iterations = 0;
};

SdpBound bell_norm_sdp(const std::vector<HermitianMatrix> &contracted) {
    double scale = 0.0;
    for (const auto &c : contracted) scale = std::max(scale, c.matrix().norm());
    const Eigen::Index d = contracted.front().dim();
    if (scale == 0.0) return {0.0, 0.0, CMatrix::Identity(d, d) / static_cast<double>(d), 0};

    SdpProblem p(Sense::Maximize);
    const auto rho = p.add_block("rho", d);
    for (size_t y = 0; y < contracted.size(); ++y) {
        const CMatrix c = contracted[y].matrix() / scale;
        const auto s = p.add_block("S" + std::to_string(y), d);
        const auto t = p.add_block("T" + std::to_string(y), d);
        p.add_objective(s, c);
        p.add_objective(t, -c);
        p.add_matrix_equality({{s, 1.0}, {t, 1.0}, {rho, -1.0}}, CMatrix::Zero(d, d));
    }
    p.add_constraint({{rho, CMatrix::Identity(d, d)}}, 1.0);
    const SdpSolution sol = solve_or_throw(p);
    return {scale * sol.primal_value, scale * sol.dual_value, sol.block_values[rho], sol.iterations};
}

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Bob step: with Ψ_ij = ψ_{i d + j}, ⟨ψ|A' ⊗ B|ψ⟩ = Tr[R Bᵀ] where
// R = Ψ* A' Ψ, maximized by B = sign(R)ᵀ. Returns Σ_y ‖R_y‖₁.
double bob_step(const std::vector<HermitianMatrix> &contracted, const CMatrix &psi, std::vector<HermitianMatrix> &bob) {
    const Eigen::Index d = psi.rows();
    bob.clear();
    double value = 0.0;
    for (const auto &c : contracted) {
        const Eigensystem rs = hermitian_eig(HermitianMatrix::symmetrized(psi.adjoint() * c.matrix() * psi));
        RVector sgn(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            sgn(i) = rs.values(i) >= 0.0 ? 1.0 : -1.0;
            value += std::abs(rs.values(i));
        }
        const CMatrix sign_r = rs.vectors * sgn.cast<Complex>().asDiagonal() * rs.vectors.adjoint();
        bob.push_back(HermitianMatrix::symmetrized(sign_r.transpose()));
    }
    return value;
}

// State step: top eigenpair of Σ_y A'_y ⊗ B_y.
double state_step(const std::vector<HermitianMatrix> &contracted, const std::vector<HermitianMatrix> &bob,
                  CVector &state) {
    const Eigen::Index d = contracted.front().dim();
    CMatrix w = CMatrix::Zero(d * d, d * d);
    for (size_t y = 0; y < contracted.size(); ++y) w += kron(contracted[y].matrix(), bob[y].matrix());
    const Eigensystem es = hermitian_eig(HermitianMatrix::symmetrized(w));
    state = es.vectors.col(0);
    return es.values(0);
}

CMatrix as_square(const CVector &state, Eigen::Index d) { return Eigen::Map<const RowMajor>(state.data(), d, d); }

// Alternating ascent from the purification Ψ = √ρ; every value is attained by
// a valid strategy, so the result is a lower bound on ‖A‖_M.
double polish_from_state(const std::vector<HermitianMatrix> &contracted, const CMatrix &rho) {
    const Eigen::Index d = rho.rows();
    const Eigensystem es = hermitian_eig(HermitianMatrix::symmetrized(rho));
    const RVector root = es.values.cwiseMax(0.0).cwiseSqrt();
    CMatrix psi = es.vectors * root.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    psi /= psi.norm();

    std::vector<HermitianMatrix> bob;
    CVector state;
    double best = bob_step(contracted, psi, bob);
    for (int it = 0; it < kPolishIterations; ++it) {
        const double v = state_step(contracted, bob, state);
        const double gain = v - best;
        best = std::max(best, v);
        if (gain < 1e-15 * std::max(1.0, std::abs(best))) break;
        psi = as_square(state, d);
        best = std::max(best, bob_step(contracted, psi, bob));
    }
    return best;
}

}  // namespace

double abs_sum_bound(const MeasurementTuple &a, const GameMatrix &m) {
    const auto contracted = contract(a, m);
    HermitianMatrix total = HermitianMatrix::zero(a.dim());
    for (const auto &c : contracted) total += matrix_abs(c);
    return lambda_max(total);
}

BellNormDetails m_bell_norm_details(const MeasurementTuple &a, const GameMatrix &m) {
    const auto contracted = contract(a, m);
    const Eigen::Index d = a.dim();
    BellNormDetails out;
    out.is_norm = m.invertible();

    HermitianMatrix total = HermitianMatrix::zero(d);
    for (const auto &c : contracted) total += matrix_abs(c);
    const Eigensystem es = hermitian_eig(total);
    const double top = es.values(0);
    out.abs_sum_bound = top;
    if (top <= 0.0) {
        out.closed_form_exact = true;
        out.value = 0.0;
        return out;
    }

    // ρ = P / k on the top eigenspace P of Σ|A'_y| gives the lower bound
    // Σ_y ‖P A'_y P‖₁ / k.
    const double cluster = 1e-10 * std::max(1.0, top);
    Eigen::Index k = 1;
    while (k < d && es.values(k) >= top - cluster) ++k;
    const CMatrix v = es.vectors.leftCols(k);
    double lower = 0.0;
    for (const auto &c : contracted) {
        lower += trace_norm(HermitianMatrix::symmetrized(v.adjoint() * c.matrix() * v));
    }
    lower /= static_cast<double>(k);
    if (top - lower <= 1e-12 * std::max(1.0, top)) {
        out.closed_form_exact = true;
        out.value = top;
        return out;
    }
    const SdpBound sdp = bell_norm_sdp(contracted);
    out.sdp_iterations = sdp.iterations;
    const double polished = polish_from_state(contracted, sdp.rho);
    const double band = 1e-8 * std::max(1.0, std::abs(sdp.dual));
    out.value = polished >= sdp.primal - band && polished <= sdp.dual + band ? polished : sdp.primal;
    out.value = std::min(top, out.value);
    return out;
}

double m_bell_norm(const MeasurementTuple &a, const GameMatrix &m) { return m_bell_norm_details(a, m).value; }

double vector_m_norm(std::span<const double> p, const GameMatrix &m) {
    if (static_cast<Eigen::Index>(p.size()) != m.n()) throw ShapeError("vector length does not match the game");
    const Eigen::Map<const RVector> pv(p.data(), m.n());
    return (m.matrix().transpose() * pv).cwiseAbs().sum();
}

double vector_m_dual_norm(std::span<const double> p, const GameMatrix &m) {
    if (static_cast<Eigen::Index>(p.size()) != m.n()) throw ShapeError("vector length does not match the game");
    const Eigen::Map<const RVector> pv(p.data(), m.n());
    return (m.inverse() * pv).cwiseAbs().maxCoeff();
}

bool is_bell_local(const MeasurementTuple &a, const GameMatrix &m) {
    return m_bell_norm(a, m) <= classical_bias(m) + 1e-9;
}

namespace {

struct RestartOutcome {
    double value = -1.0;
    std::vector<HermitianMatrix> bob;
    CVector state;
    bool converged = false;
    int iterations = 0;
    std::vector<double> trace;
    double max_decrease = 0.0;
};

HermitianMatrix random_sign_operator(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    }
    return matrix_sign(HermitianMatrix::symmetrized(g));
}

RestartOutcome seesaw_restart(const std::vector<HermitianMatrix> &contracted, Eigen::Index d,
                              const SeesawOptions &opt, std::uint64_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
    std::mt19937_64 rng(seq);

    RestartOutcome out;
    out.bob.reserve(contracted.size());
    for (size_t y = 0; y < contracted.size(); ++y) out.bob.push_back(random_sign_operator(d, rng));

    auto push = [&](double v) {
        if (!out.trace.empty()) out.max_decrease = std::max(out.max_decrease, out.trace.back() - v);
        out.trace.push_back(v);
    };
    double round_start = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.iterations; ++it) {
        push(state_step(contracted, out.bob, out.state));
        const double value = bob_step(contracted, as_square(out.state, d), out.bob);
        push(value);
        out.value = value;
        out.iterations = it + 1;

        if (value - round_start < opt.tolerance) {
            out.converged = true;
            break;
        }
        round_start = value;
    }
    return out;
}

}  // namespace

SeesawResult seesaw_bias(const MeasurementTuple &a, const GameMatrix &m, const SeesawOptions &options) {
    if (options.restarts < 1) throw ValidationError("see-saw needs at least one restart");
    if (options.iterations < 1) throw ValidationError("see-saw needs at least one iteration");
    if (!a.is_valid()) throw ValidationError("see-saw requires a valid tuple (‖A_x‖ <= 1)");
    const auto contracted = contract(a, m);
    const Eigen::Index d = a.dim();

    std::vector<RestartOutcome> outcomes(static_cast<size_t>(options.restarts));
    parallel_for(outcomes.size(), [&](std::size_t r) { outcomes[r] = seesaw_restart(contracted, d, options, r); });

    size_t best = 0;
    double max_decrease = 0.0;
    for (size_t r = 0; r < outcomes.size(); ++r) {
        max_decrease = std::max(max_decrease, outcomes[r].max_decrease);
        if (outcomes[r].value > outcomes[best].value) best = r;
    }
    auto &b = outcomes[best];
    return SeesawResult{b.value,       MeasurementTuple(std::move(b.bob)), std::move(b.state), b.converged,
                        b.iterations, std::move(b.trace),                 max_decrease};
}

}  // namespace belltensor

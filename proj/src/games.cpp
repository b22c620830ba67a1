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

#include "belltensor/games.hpp"

#include <bit>
#include <cstdint>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "belltensor/error.hpp"
#include "belltensor/sdp.hpp"

namespace belltensor {

GameMatrix::GameMatrix(RMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        std::ostringstream ss;
        ss << "game matrix must be square, got " << m_.rows() << "x" << m_.cols();
        throw ShapeError(ss.str());
    }
    if (m_.rows() < 2) throw ShapeError("game matrix needs at least two questions per side");
    if (!m_.allFinite()) throw ValidationError("game matrix has non-finite entries");
    if (is_invertible(m_)) inverse_ = real_inverse(m_);
}

const RMatrix &GameMatrix::inverse() const {
    if (!inverse_) throw SingularMatrixError("game matrix is not invertible", 0.0);
    return *inverse_;
}

double classical_bias(const RMatrix &m) {
    const Eigen::Index n = m.rows();
    if (n > kMaxEnumerationSize) {
        throw SizeError("classical bias enumeration is limited to N <= " + std::to_string(kMaxEnumerationSize));
    }
    if (n == 0) return 0.0;
    // Gray-code walk over z ∈ {±1}ᴺ with z_{N−1} = +1; v = Mᵀz is updated one
    // row at a time and recomputed periodically to bound drift.
    std::vector<double> z(static_cast<size_t>(n), 1.0);
    RVector v = m.transpose() * RVector::Ones(n);
    double best = v.cwiseAbs().sum();
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t k = 1; k < count; ++k) {
        const auto bit = static_cast<Eigen::Index>(std::countr_zero(k));
        v -= 2.0 * z[static_cast<size_t>(bit)] * m.row(bit).transpose();
        z[static_cast<size_t>(bit)] = -z[static_cast<size_t>(bit)];
        if ((k & 255u) == 0) v = m.transpose() * Eigen::Map<const RVector>(z.data(), n);
        best = std::max(best, v.cwiseAbs().sum());
    }
    return best;
}

double classical_bias(const GameMatrix &m) { return classical_bias(m.matrix()); }

double linf_injective_norm(const RMatrix &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

GameMatrix normalize(const GameMatrix &m) {
    const double beta = classical_bias(m);
    if (!(beta > 0.0)) throw DegenerateError("cannot normalize a game with zero classical bias");
    return GameMatrix(m.matrix() / beta);
}

double uncertainty_product(const GameMatrix &m) { return linf_injective_norm(m.inverse()) * classical_bias(m); }

bool is_scaled_hadamard(const GameMatrix &m, double tol) {
    const RMatrix &a = m.matrix();
    const double e = std::abs(a(0, 0));
    if (!(e > tol)) return false;
    if (((a.cwiseAbs().array() - e).abs() > tol).any()) return false;
    const auto n = static_cast<double>(m.n());
    const RMatrix gram = a * a.transpose() - e * e * n * RMatrix::Identity(m.n(), m.n());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

double quantum_bias_sdp(const GameMatrix &m) {
    const Eigen::Index n = m.n();
    if (n > kMaxEnumerationSize) throw SizeError("quantum bias SDP is limited to N <= 24");
    SdpProblem p(Sense::Maximize);
    const auto g = p.add_block("gram", 2 * n);
    CMatrix c = CMatrix::Zero(2 * n, 2 * n);
    c.topRightCorner(n, n) = 0.5 * m.matrix().cast<Complex>();
    c.bottomLeftCorner(n, n) = 0.5 * m.matrix().transpose().cast<Complex>();
    p.add_objective(g, c);
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        CMatrix e = CMatrix::Zero(2 * n, 2 * n);
        e(i, i) = 1.0;
        p.add_constraint({{g, std::move(e)}}, 1.0);
    }
    return solve_or_throw(p).primal_value;
}

GameMatrix chsh() {
    RMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return GameMatrix(0.5 * m);
}

GameMatrix deformed_chsh(double t) {
    RMatrix m(2, 2);
    m << 1, 1, 1, -t;
    return GameMatrix(m);
}

GameMatrix biased_chsh(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
        std::ostringstream ss;
        ss << "biased CHSH parameters must lie in [0, 1], got p = " << p << ", q = " << q;
        throw ValidationError(ss.str());
    }
    RMatrix m(2, 2);
    m << p * q, p * (1 - q), q * (1 - p), -(1 - q) * (1 - p);
    return GameMatrix(m);
}

GameMatrix i3322() {
    RMatrix m(3, 3);
    m << 1, 1, 1, 1, 1, -1, 1, -1, 0;
    return GameMatrix(0.25 * m);
}

namespace {

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (;;) {
        const size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

std::optional<GameMatrix> named_game(std::string_view id) {
    if (id == "chsh") return chsh();
    if (id == "i3322") return i3322();
    const auto parts = split(id, ':');
    if (parts.size() == 2 && parts[0] == "mt") {
        if (auto t = parse_double(parts[1])) return deformed_chsh(*t);
        throw ValidationError("bad deformed CHSH parameter in '" + std::string(id) + "'");
    }
    if (parts.size() == 3 && parts[0] == "gpq") {
        auto p = parse_double(parts[1]);
        auto q = parse_double(parts[2]);
        if (p && q) return biased_chsh(*p, *q);
        throw ValidationError("bad biased CHSH parameters in '" + std::string(id) + "'");
    }
    return std::nullopt;
}

}  // namespace belltensor

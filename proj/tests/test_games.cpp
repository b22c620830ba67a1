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

#include <cmath>
#include <random>

#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/sampling.hpp"
#include "doctest.h"

using namespace belltensor;

namespace {

// max_{a, b ∈ {±1}ᴺ} aᵀ M b over every pair of sign vectors.
double brute_force_bias(const RMatrix &m) {
    const Eigen::Index n = m.rows();
    double best = -INFINITY;
    for (long sa = 0; sa < (1L << n); ++sa) {
        for (long sb = 0; sb < (1L << n); ++sb) {
            double v = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) {
                    v += ((sa >> i) & 1 ? -1.0 : 1.0) * m(i, j) * ((sb >> j) & 1 ? -1.0 : 1.0);
                }
            }
            best = std::max(best, v);
        }
    }
    return best;
}

RMatrix gaussian(Eigen::Index n, Rng &rng) {
    std::normal_distribution<double> normal;
    RMatrix m(n, n);
    for (Eigen::Index k = 0; k < n * n; ++k) m(k / n, k % n) = normal(rng);
    return m;
}

}  // namespace

TEST_CASE("game construction") {
    CHECK_THROWS_AS(GameMatrix(RMatrix::Zero(2, 3)), ShapeError);
    CHECK_THROWS_AS(GameMatrix(RMatrix::Zero(1, 1)), ValidationError);
    RMatrix bad = RMatrix::Identity(2, 2);
    bad(0, 1) = NAN;
    CHECK_THROWS_AS(GameMatrix{bad}, ValidationError);

    const GameMatrix c = chsh();
    CHECK(c.invertible());
    CHECK((c.matrix() * c.inverse() - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_FALSE(deformed_chsh(-1.0).invertible());
    CHECK_THROWS_AS(deformed_chsh(-1.0).inverse(), SingularMatrixError);
}

TEST_CASE("named games") {
    RMatrix expected(2, 2);
    expected << 0.5, 0.5, 0.5, -0.5;
    CHECK(chsh().matrix() == expected);
    expected << 1, 1, 1, -1;
    CHECK(deformed_chsh(1.0).matrix() == expected);
    expected << 1, 0, 0, 0;
    CHECK(biased_chsh(1.0, 1.0).matrix() == expected);
    CHECK_THROWS_AS(biased_chsh(1.5, 0.5), ValidationError);
    for (double p : {0.0, 1.0}) {
        CHECK_FALSE(biased_chsh(p, 0.3).invertible());
        CHECK_FALSE(biased_chsh(0.3, p).invertible());
    }
    CHECK(biased_chsh(0.3, 0.6).invertible());
    CHECK(i3322().matrix()(2, 2) == 0.0);
    CHECK(i3322().matrix()(1, 2) == -0.25);

    REQUIRE(named_game("chsh"));
    CHECK(named_game("chsh")->matrix() == chsh().matrix());
    REQUIRE(named_game("mt:0.5"));
    CHECK(named_game("mt:0.5")->matrix() == deformed_chsh(0.5).matrix());
    REQUIRE(named_game("gpq:0.25:0.75"));
    CHECK(named_game("gpq:0.25:0.75")->matrix() == biased_chsh(0.25, 0.75).matrix());
    CHECK(named_game("i3322"));
    CHECK_THROWS_AS(named_game("mt:"), ValidationError);
    CHECK_THROWS_AS(named_game("mt:abc"), ValidationError);
    CHECK_THROWS_AS(named_game("gpq:2:0.5"), ValidationError);
    CHECK_FALSE(named_game("gpq:0.5"));
    CHECK_FALSE(named_game("unknown"));
}

TEST_CASE("classical bias closed forms") {
    CHECK(classical_bias(chsh()) == doctest::Approx(1.0).epsilon(1e-15));
    for (double t : {-4.0, -1.0, 0.0, 0.3, 1.0, 2.5}) {
        CHECK(std::abs(classical_bias(deformed_chsh(t)) - (2.0 + std::abs(t - 1.0))) <= 1e-12);
    }
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        for (double q : {0.0, 0.35, 0.5, 1.0}) {
            const double expected = 1.0 - 2.0 * std::min(p, 1 - p) * std::min(q, 1 - q);
            CHECK(std::abs(classical_bias(biased_chsh(p, q)) - expected) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(classical_bias(RMatrix::Zero(25, 25)), SizeError);
}

TEST_CASE("classical bias matches brute force and symmetries") {
    Rng rng(21);
    std::uniform_real_distribution<double> scale(-4.0, 4.0);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index n = 2 + trial % 5;
        const RMatrix m = gaussian(n, rng);
        const double beta = classical_bias(m);
        CHECK(std::abs(beta - brute_force_bias(m)) <= 1e-12 * std::max(1.0, beta));
        CHECK(std::abs(classical_bias(RMatrix(m.transpose())) - beta) <= 1e-12 * beta);
        CHECK(std::abs(classical_bias(RMatrix(-m)) - beta) <= 1e-12 * beta);
        const double c = scale(rng);
        CHECK(std::abs(classical_bias(RMatrix(c * m)) - std::abs(c) * beta) <= 1e-12 * std::max(1.0, std::abs(c) * beta));
    }
}

TEST_CASE("injective norm of the inverse") {
    RMatrix h(2, 2);
    h << 1, 1, 1, -1;
    CHECK(linf_injective_norm(h) == 1.0);
    CHECK(linf_injective_norm(RMatrix::Zero(3, 3)) == 0.0);
    CHECK(linf_injective_norm(i3322().inverse()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("normalization") {
    const GameMatrix n1 = normalize(deformed_chsh(1.0));
    CHECK((n1.matrix() - chsh().matrix()).cwiseAbs().maxCoeff() <= 1e-15);
    const GameMatrix twice = normalize(normalize(deformed_chsh(0.3)));
    CHECK((twice.matrix() - normalize(deformed_chsh(0.3)).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    const GameMatrix g = biased_chsh(0.5, 0.5);
    CHECK((normalize(g).matrix() - 2.0 * g.matrix()).cwiseAbs().maxCoeff() <= 1e-15);

    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(std::abs(classical_bias(normalize(GameMatrix(gaussian(3, rng)))) - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(normalize(GameMatrix(RMatrix::Zero(2, 2))), DegenerateError);
}

TEST_CASE("uncertainty product") {
    for (double a : {-2.0, 0.1, 1.0, 7.0}) {
        CHECK(std::abs(uncertainty_product(GameMatrix(a * chsh().matrix())) - 1.0) <= 1e-9);
    }
    CHECK(uncertainty_product(GameMatrix(RMatrix::Identity(2, 2))) == doctest::Approx(2.0));
    CHECK(uncertainty_product(deformed_chsh(3.0)) > 1.0);
    CHECK_THROWS_AS(uncertainty_product(deformed_chsh(-1.0)), SingularMatrixError);

    Rng rng(23);
    for (Eigen::Index n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            const double u = uncertainty_product(random_invertible_game(n, rng));
            CHECK(u >= std::sqrt(n / 2.0) - 1e-9);
            CHECK(u >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("scaled Hadamard detection") {
    CHECK(is_scaled_hadamard(chsh()));
    CHECK(is_scaled_hadamard(GameMatrix(-3.0 * chsh().matrix())));
    CHECK_FALSE(is_scaled_hadamard(deformed_chsh(2.0)));
    CHECK_FALSE(is_scaled_hadamard(GameMatrix(RMatrix::Identity(2, 2))));
    RMatrix h4(4, 4);
    h4 << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
    CHECK(is_scaled_hadamard(GameMatrix(0.5 * h4)));
    RMatrix same_sign(2, 2);
    same_sign << 1, 1, 1, 1;
    CHECK_FALSE(is_scaled_hadamard(GameMatrix(same_sign)));

    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_invertible_game(2, rng);
        const bool unit = std::abs(uncertainty_product(m) - 1.0) <= 1e-9;
        CHECK(unit == is_scaled_hadamard(m));
    }
}

TEST_CASE("quantum bias") {
    CHECK(std::abs(quantum_bias_sdp(chsh()) - std::sqrt(2.0)) <= 1e-7);
    RMatrix diag = RMatrix::Zero(3, 3);
    diag.diagonal() << 1.5, -0.5, 2.0;
    CHECK(std::abs(quantum_bias_sdp(GameMatrix(diag)) - 4.0) <= 1e-7);

    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const RMatrix m = gaussian(2 + trial % 4, rng);
        const double beta = classical_bias(m), q = quantum_bias_sdp(GameMatrix(m));
        CHECK(q >= beta - 1e-7);
        CHECK(q <= kKrivineBound * beta + 1e-7);
    }
}

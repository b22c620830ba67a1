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

#include "belltensor/sampling.hpp"

namespace belltensor {

HermitianMatrix random_hermitian(Eigen::Index dim, Rng &rng) {
    std::normal_distribution<double> normal;
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return HermitianMatrix::symmetrized(m);
}

Observable random_observable(Eigen::Index dim, Rng &rng) {
    HermitianMatrix h = random_hermitian(dim, rng);
    while (operator_norm(h) < 1e-6) h = random_hermitian(dim, rng);
    const double scale = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return Observable((scale / operator_norm(h)) * h);
}

MeasurementTuple random_tuple(Eigen::Index n, Eigen::Index dim, Rng &rng) {
    std::vector<Observable> obs;
    for (Eigen::Index x = 0; x < n; ++x) obs.push_back(random_observable(dim, rng));
    return MeasurementTuple(std::move(obs));
}

HermitianMatrix random_effect(Eigen::Index dim, Rng &rng) {
    return effect_from_observable(random_observable(dim, rng));
}

GameMatrix random_invertible_game(Eigen::Index n, Rng &rng) {
    std::normal_distribution<double> normal;
    for (;;) {
        RMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = normal(rng);
        }
        if (is_invertible(m)) return GameMatrix(m);
    }
}

}  // namespace belltensor

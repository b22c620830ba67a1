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

#include <random>

#include "belltensor/games.hpp"
#include "belltensor/measurements.hpp"

namespace belltensor {

using Rng = std::mt19937_64;

/// Hermitian matrix with independent standard normal real and imaginary parts.
HermitianMatrix random_hermitian(Eigen::Index dim, Rng &rng);

/// Random Hermitian direction rescaled to operator norm uniform in [0, 1].
Observable random_observable(Eigen::Index dim, Rng &rng);

MeasurementTuple random_tuple(Eigen::Index n, Eigen::Index dim, Rng &rng);

/// (I + A) / 2 for a random observable A.
HermitianMatrix random_effect(Eigen::Index dim, Rng &rng);

/// Standard normal entries, redrawn until invertible.
GameMatrix random_invertible_game(Eigen::Index n, Rng &rng);

}  // namespace belltensor

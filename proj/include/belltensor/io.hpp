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

// JSON schemas:
//   Hermitian matrix  {"dim": d, "re": [[...]], "im": [[...]]}
//   real matrix       {"rows": N, "cols": N, "entries": [[...]]}
//   tuple             {"dim": d, "observables": [<Hermitian matrix>, ...]}
//   joint POVM        {"n": N, "dim": d, "elements": {"+-": <Hermitian matrix>, ...}}

#include <filesystem>
#include <string>

#include "belltensor/compat.hpp"
#include "belltensor/games.hpp"
#include "belltensor/measurements.hpp"
#include "belltensor/sdp.hpp"
#include "json.hpp"

namespace belltensor {

using Json = nlohmann::json;

Json to_json(const HermitianMatrix &h);
HermitianMatrix hermitian_from_json(const Json &j);

Json to_json(const RMatrix &m);
RMatrix real_matrix_from_json(const Json &j);

Json to_json(const MeasurementTuple &a);
MeasurementTuple tuple_from_json(const Json &j);

Json to_json(const JointPovm &povm);

/// Debug dump of an SDP: blocks, objective and constraints.
Json to_json(const SdpProblem &problem);

Json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const Json &j);

/// "pauli:x", "pauli:x,y" or "pauli:x,y,z" (coefficients of σ_X, σ_Y, σ_Z),
/// otherwise a path to a tuple JSON file.
MeasurementTuple load_tuple(const std::string &spec);

/// A named game id (see named_game) or a path to a real-matrix JSON file.
GameMatrix load_game(const std::string &spec);

}  // namespace belltensor

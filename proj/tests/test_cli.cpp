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
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "belltensor/cli.hpp"
#include "belltensor/io.hpp"
#include "doctest.h"

using namespace belltensor;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("belltensor_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("game commands") {
    const auto bias = invoke({"bias", "--game", "chsh"});
    REQUIRE(bias.code == cli::kExitOk);
    CHECK(bias.json()["classical_bias"].get<double>() == doctest::Approx(1.0));

    const auto unc = invoke({"uncertainty", "--game", "mt:3"});
    REQUIRE(unc.code == cli::kExitOk);
    CHECK(unc.json()["uncertainty_product"].get<double>() > 1.0);
    CHECK(unc.json()["hadamard"] == false);
    CHECK(invoke({"uncertainty", "--game", "chsh"}).json()["hadamard"] == true);

    const auto q = invoke({"qbias", "--game", "chsh"});
    REQUIRE(q.code == cli::kExitOk);
    CHECK(std::abs(q.json()["quantum_bias"].get<double>() - std::sqrt(2.0)) <= 1e-5);
}

TEST_CASE("tuple commands") {
    const auto gamma = invoke({"gamma", "--tuple", "pauli:1,1,0"});
    REQUIRE(gamma.code == cli::kExitOk);
    CHECK(std::abs(gamma.json()["gamma"].get<double>() - 1.0 / std::sqrt(2.0)) <= 1e-6);

    const auto nc = invoke({"norm-c", "--tuple", "pauli:1,1,1"});
    REQUIRE(nc.code == cli::kExitOk);
    CHECK(std::abs(nc.json()["norm_c"].get<double>() - std::sqrt(3.0)) <= 1e-6);

    const auto nm = invoke({"norm-m", "--game", "chsh", "--tuple", "pauli:1,1"});
    REQUIRE(nm.code == cli::kExitOk);
    const Json j = nm.json();
    CHECK(std::abs(j["norm_m"].get<double>() - std::sqrt(2.0)) <= 1e-9);
    CHECK(j["bell_local"] == false);
    CHECK(j["is_norm"] == true);

    TempDir tmp;
    const auto cert = tmp.path / "povm.json";
    const auto yes = invoke({"compatible", "--tuple", "pauli:0.5,0.5", "--emit-certificate", cert.string()});
    REQUIRE(yes.code == cli::kExitOk);
    CHECK(yes.json()["compatible"] == true);
    CHECK(read_json_file(cert)["elements"].size() == 4);
    const auto no = invoke({"compatible", "--tuple", "pauli:1,1"});
    CHECK(no.json()["compatible"] == false);
    CHECK(no.json()["certificate"].is_null());
}

TEST_CASE("seesaw output is reproducible") {
    const std::vector<std::string> args{"seesaw", "--game", "i3322", "--tuple", "pauli:1,1,1", "--seed", "7"};
    const auto a = invoke(args), b = invoke(args);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.json()["value"].get<double>() <= 1.2195787943 + 1e-9);
    CHECK(a.json().contains("converged"));
    CHECK(a.json().contains("iterations"));
}

TEST_CASE("scan command") {
    TempDir tmp;
    const auto csv = tmp.path / "mt.csv", svg = tmp.path / "mt.svg";
    const auto r = invoke({"scan", "mt", "--y", "0,1", "--t", "0:1:0.5", "--out", csv.string(), "--svg", svg.string()});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.json()["points"] == 6);
    CHECK(r.json()["violated"] == 2);
    CHECK(fs::exists(csv));
    CHECK(fs::exists(svg));

    const auto g = invoke({"scan", "gpq", "--y", "1", "--p", "0.5", "--q", "0.5,1", "--out", (tmp.path / "g.csv").string()});
    REQUIRE(g.code == cli::kExitOk);
    CHECK(g.json()["points"] == 2);
    CHECK(g.json()["svg"].is_null());
}

TEST_CASE("errors and exit codes") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
    CHECK(invoke({"bias", "--bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"gamma"}).code == cli::kExitUsage);
    CHECK(invoke({"scan", "xyz", "--out", "x.csv"}).code == cli::kExitUsage);

    const auto bad_game = invoke({"bias", "--game", "nonsense"});
    CHECK(bad_game.code == cli::kExitValidation);
    const Json err = Json::parse(bad_game.err);
    CHECK(err.contains("error"));
    CHECK(err["message"].get<std::string>().find("nonsense") != std::string::npos);
    CHECK(bad_game.out.empty());

    CHECK(invoke({"norm-m", "--game", "i3322", "--tuple", "pauli:1,1"}).code == cli::kExitValidation);
    CHECK(invoke({"gamma", "--tuple", "pauli:0,0"}).code == cli::kExitValidation);
    CHECK(invoke({"gamma", "--tuple", "/nonexistent/tuple.json"}).code == cli::kExitValidation);
    CHECK(invoke({"scan", "mt", "--y", "1:0:0.1", "--out", "x.csv"}).code == cli::kExitValidation);
}

TEST_CASE("verify") {
    const auto ok = invoke({"verify", "--only", "6"});
    CHECK(ok.code == cli::kExitOk);
    const Json report = ok.json();
    CHECK(report["all_passed"] == true);
    CHECK(report["criteria"].size() == 1);

    const auto strict = invoke({"verify", "--only", "6", "--tolerance-scale", "0"});
    CHECK(strict.code == 1);
    CHECK(strict.json()["all_passed"] == false);
    CHECK(strict.json()["failed"] == 1);
}

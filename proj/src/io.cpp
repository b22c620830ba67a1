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

#include "belltensor/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "belltensor/error.hpp"

namespace belltensor {

namespace {

template <typename Matrix, typename F>
Json rows_of(const Matrix &m, F &&f) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(f(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMatrix read_rows(const Json &rows, Eigen::Index expect_rows, Eigen::Index expect_cols, const char *what) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != expect_rows) {
        throw ShapeError(std::string("field '") + what + "' must have " + std::to_string(expect_rows) + " rows");
    }
    RMatrix m(expect_rows, expect_cols);
    for (Eigen::Index i = 0; i < expect_rows; ++i) {
        const Json &row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != expect_cols) {
            throw ShapeError(std::string("row ") + std::to_string(i) + " of '" + what + "' has the wrong length");
        }
        for (Eigen::Index j = 0; j < expect_cols; ++j) {
            const Json &v = row[static_cast<size_t>(j)];
            if (!v.is_number()) throw ValidationError(std::string("non-numeric entry in '") + what + "'");
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

Eigen::Index positive_int(const Json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
        throw ValidationError(std::string("missing or non-positive integer field '") + key + "'");
    }
    return static_cast<Eigen::Index>(j[key].get<long long>());
}

}  // namespace

Json to_json(const HermitianMatrix &h) {
    return {{"dim", h.dim()},
            {"re", rows_of(h.matrix(), [](Complex c) { return c.real(); })},
            {"im", rows_of(h.matrix(), [](Complex c) { return c.imag(); })}};
}

HermitianMatrix hermitian_from_json(const Json &j) {
    if (!j.is_object()) throw ValidationError("Hermitian matrix JSON must be an object");
    const Eigen::Index d = positive_int(j, "dim");
    const RMatrix re = read_rows(j.at("re"), d, d, "re");
    const RMatrix im = j.contains("im") ? read_rows(j["im"], d, d, "im") : RMatrix::Zero(d, d);
    CMatrix m(d, d);
    m.real() = re;
    m.imag() = im;
    return HermitianMatrix(m);
}

Json to_json(const RMatrix &m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows_of(m, [](double v) { return v; })}};
}

RMatrix real_matrix_from_json(const Json &j) {
    if (!j.is_object()) throw ValidationError("real matrix JSON must be an object");
    return read_rows(j.at("entries"), positive_int(j, "rows"), positive_int(j, "cols"), "entries");
}

Json to_json(const MeasurementTuple &a) {
    Json obs = Json::array();
    for (const auto &o : a.observables()) obs.push_back(to_json(o.matrix()));
    return {{"dim", a.dim()}, {"observables", std::move(obs)}};
}

MeasurementTuple tuple_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("observables") || !j["observables"].is_array()) {
        throw ValidationError("tuple JSON needs an 'observables' array");
    }
    const Eigen::Index d = positive_int(j, "dim");
    std::vector<HermitianMatrix> obs;
    for (const auto &o : j["observables"]) {
        obs.push_back(hermitian_from_json(o));
        if (obs.back().dim() != d) throw ShapeError("observable dimension differs from the tuple 'dim'");
    }
    return MeasurementTuple(std::move(obs));
}

Json to_json(const JointPovm &povm) {
    Json elements = Json::object();
    for (const auto &[eps, e] : povm.elements()) elements[eps.key()] = to_json(e);
    return {{"n", povm.n()}, {"dim", povm.dim()}, {"elements", std::move(elements)}};
}

Json to_json(const SdpProblem &problem) {
    Json blocks = Json::array();
    for (size_t b = 0; b < problem.blocks().size(); ++b) {
        blocks.push_back({{"label", problem.blocks()[b].label},
                          {"dim", problem.blocks()[b].dim},
                          {"objective", to_json(HermitianMatrix::symmetrized(problem.objective()[b]))}});
    }
    Json constraints = Json::array();
    for (const auto &c : problem.constraints()) {
        Json terms = Json::array();
        for (const auto &t : c.terms) {
            terms.push_back({{"block", t.block}, {"coefficient", to_json(HermitianMatrix::symmetrized(t.coefficient))}});
        }
        constraints.push_back({{"rhs", c.rhs}, {"terms", std::move(terms)}});
    }
    return {{"sense", problem.sense() == Sense::Minimize ? "minimize" : "maximize"},
            {"blocks", std::move(blocks)},
            {"constraints", std::move(constraints)}};
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ValidationError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const Json &j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

MeasurementTuple load_tuple(const std::string &spec) {
    constexpr std::string_view prefix = "pauli:";
    if (spec.starts_with(prefix)) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(prefix.size()));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                coeffs.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception &) {
                throw ValidationError("bad Pauli coefficient '" + item + "' in '" + spec + "'");
            }
        }
        if (coeffs.empty() || coeffs.size() > 3) {
            throw ValidationError("Pauli shorthand takes one to three coefficients, got '" + spec + "'");
        }
        const HermitianMatrix paulis[] = {sigma_x(), sigma_y(), sigma_z()};
        std::vector<HermitianMatrix> obs;
        for (size_t k = 0; k < coeffs.size(); ++k) obs.push_back(coeffs[k] * paulis[k]);
        return MeasurementTuple(std::move(obs));
    }
    return tuple_from_json(read_json_file(spec));
}

GameMatrix load_game(const std::string &spec) {
    if (auto g = named_game(spec)) return *std::move(g);
    if (!std::filesystem::exists(spec)) {
        throw ValidationError("'" + spec + "' is neither a known game id (chsh, mt:<t>, gpq:<p>:<q>, i3322) nor a file");
    }
    return GameMatrix(real_matrix_from_json(read_json_file(spec)));
}

}  // namespace belltensor

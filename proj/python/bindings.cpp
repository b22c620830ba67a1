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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "belltensor/acceptance.hpp"
#include "belltensor/bellnorm.hpp"
#include "belltensor/compat.hpp"
#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/scan.hpp"

namespace py = pybind11;
using namespace belltensor;

namespace {

MeasurementTuple to_tuple(const std::vector<CMatrix> &observables) {
    std::vector<HermitianMatrix> obs;
    obs.reserve(observables.size());
    for (const auto &o : observables) obs.emplace_back(o);
    return MeasurementTuple(std::move(obs));
}

GameMatrix to_game(const RMatrix &m) { return GameMatrix(m); }

py::dict povm_dict(const JointPovm &povm) {
    py::dict out;
    for (const auto &[eps, e] : povm.elements()) out[py::str(eps.key())] = e.matrix();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bell-locality norms, measurement compatibility and XOR games";

    auto base = py::register_exception<Error>(m, "BellTensorError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    m.def("chsh", [] { return chsh().matrix(); });
    m.def("deformed_chsh", [](double t) { return deformed_chsh(t).matrix(); }, py::arg("t"));
    m.def("biased_chsh", [](double p, double q) { return biased_chsh(p, q).matrix(); }, py::arg("p"), py::arg("q"));
    m.def("i3322", [] { return i3322().matrix(); });
    m.def(
        "named_game",
        [](const std::string &id) -> std::optional<RMatrix> {
            if (auto g = named_game(id)) return g->matrix();
            return std::nullopt;
        },
        py::arg("id"));
    m.def("normalize", [](const RMatrix &g) { return normalize(to_game(g)).matrix(); }, py::arg("game"));

    m.def("classical_bias", [](const RMatrix &g) { return classical_bias(g); }, py::arg("game"));
    m.def("quantum_bias", [](const RMatrix &g) { return quantum_bias_sdp(to_game(g)); }, py::arg("game"));
    m.def("uncertainty_product", [](const RMatrix &g) { return uncertainty_product(to_game(g)); }, py::arg("game"));
    m.def(
        "is_scaled_hadamard", [](const RMatrix &g, double tol) { return is_scaled_hadamard(to_game(g), tol); },
        py::arg("game"), py::arg("tol") = 1e-9);

    m.def(
        "m_bell_norm",
        [](const std::vector<CMatrix> &a, const RMatrix &g) { return m_bell_norm(to_tuple(a), to_game(g)); },
        py::arg("observables"), py::arg("game"));
    m.def(
        "abs_sum_bound",
        [](const std::vector<CMatrix> &a, const RMatrix &g) { return abs_sum_bound(to_tuple(a), to_game(g)); },
        py::arg("observables"), py::arg("game"));
    m.def(
        "is_bell_local",
        [](const std::vector<CMatrix> &a, const RMatrix &g) { return is_bell_local(to_tuple(a), to_game(g)); },
        py::arg("observables"), py::arg("game"));
    m.def(
        "vector_m_norm", [](const std::vector<double> &p, const RMatrix &g) { return vector_m_norm(p, to_game(g)); },
        py::arg("p"), py::arg("game"));
    m.def(
        "vector_m_dual_norm",
        [](const std::vector<double> &p, const RMatrix &g) { return vector_m_dual_norm(p, to_game(g)); },
        py::arg("p"), py::arg("game"));
    m.def(
        "seesaw_bias",
        [](const std::vector<CMatrix> &a, const RMatrix &g, int restarts, int iterations, std::uint64_t seed) {
            const SeesawOptions opts{.restarts = restarts, .iterations = iterations, .seed = seed};
            const MeasurementTuple tuple = to_tuple(a);
            const GameMatrix game = to_game(g);
            const SeesawResult r = [&] {
                py::gil_scoped_release release;
                return seesaw_bias(tuple, game, opts);
            }();
            std::vector<CMatrix> bob;
            for (const auto &o : r.bob.observables()) bob.push_back(o.matrix().matrix());
            py::dict out;
            out["value"] = r.value;
            out["converged"] = r.converged;
            out["iterations"] = r.iterations;
            out["bob"] = bob;
            out["state"] = r.state;
            return out;
        },
        py::arg("observables"), py::arg("game"), py::arg("restarts") = 20, py::arg("iterations") = 200,
        py::arg("seed") = 0);

    m.def(
        "epsilon_star_primal",
        [](const CMatrix &p, const CMatrix &q) { return epsilon_star_primal(HermitianMatrix(p), HermitianMatrix(q)); },
        py::arg("p"), py::arg("q"));
    m.def(
        "epsilon_star_dual",
        [](const CMatrix &p, const CMatrix &q) { return epsilon_star_dual(HermitianMatrix(p), HermitianMatrix(q)); },
        py::arg("p"), py::arg("q"));
    m.def(
        "compatibility_norm", [](const std::vector<CMatrix> &a) { return compatibility_norm(to_tuple(a)); },
        py::arg("observables"));
    m.def(
        "gamma_threshold", [](const std::vector<CMatrix> &a) { return gamma_threshold(to_tuple(a)); },
        py::arg("observables"));
    m.def(
        "is_compatible",
        [](const std::vector<CMatrix> &a) {
            const auto v = is_compatible(to_tuple(a));
            return py::make_tuple(v.compatible, v.norm,
                                  v.certificate ? py::object(povm_dict(*v.certificate)) : py::object(py::none()));
        },
        py::arg("observables"));

    m.def("deformed_chsh_closed_form", &deformed_chsh_closed_form, py::arg("y"), py::arg("t"));
    m.def("biased_chsh_closed_form", &biased_chsh_closed_form, py::arg("y"), py::arg("p"), py::arg("q"));
    m.def(
        "scan_deformed_chsh",
        [](const std::vector<double> &ys, const std::vector<double> &ts) {
            DeformedGrid grid;
            {
                py::gil_scoped_release release;
                grid = scan_deformed_chsh(ys, ts);
            }
            py::list out;
            for (const auto &r : grid) {
                out.append(py::dict(py::arg("y") = r.y, py::arg("t") = r.t, py::arg("norm_m") = r.norm_m,
                                    py::arg("norm_c") = r.norm_c, py::arg("ratio") = r.ratio,
                                    py::arg("violated") = r.violated, py::arg("invertible") = r.invertible));
            }
            return out;
        },
        py::arg("y"), py::arg("t"));
    m.def(
        "scan_biased_chsh",
        [](const std::vector<double> &ys, const std::vector<double> &ps, const std::vector<double> &qs) {
            BiasedGrid grid;
            {
                py::gil_scoped_release release;
                grid = scan_biased_chsh(ys, ps, qs);
            }
            py::list out;
            for (const auto &r : grid) {
                out.append(py::dict(py::arg("y") = r.y, py::arg("p") = r.p, py::arg("q") = r.q,
                                    py::arg("norm_g") = r.norm_g, py::arg("norm_c") = r.norm_c,
                                    py::arg("ratio") = r.ratio, py::arg("violated") = r.violated,
                                    py::arg("invertible") = r.invertible));
            }
            return out;
        },
        py::arg("y"), py::arg("p"), py::arg("q"));

    m.def(
        "verify",
        [](std::vector<int> only, double tolerance_scale, std::uint64_t seed) {
            const AcceptanceOptions opts{tolerance_scale, seed, std::move(only)};
            std::vector<CriterionResult> results;
            {
                py::gil_scoped_release release;
                results = run_acceptance(opts);
            }
            py::list out;
            for (const auto &r : results) {
                out.append(py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("passed") = r.passed,
                                    py::arg("detail") = r.detail, py::arg("seconds") = r.seconds));
            }
            return out;
        },
        py::arg("only") = std::vector<int>{}, py::arg("tolerance_scale") = 1.0, py::arg("seed") = 0);
}

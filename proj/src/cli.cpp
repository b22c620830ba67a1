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

#include "belltensor/cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "belltensor/acceptance.hpp"
#include "belltensor/bellnorm.hpp"
#include "belltensor/compat.hpp"
#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/io.hpp"
#include "belltensor/scan.hpp"

namespace belltensor::cli {

namespace {

struct Settings {
    bool pretty = false;
    std::string game = "chsh";
    std::string tuple;
    std::string certificate;
    int restarts = 20;
    int iterations = 200;
    std::uint64_t seed = 0;
    std::string family;
    std::string y_grid, t_grid, p_grid, q_grid;
    std::string csv, svg;
    std::string kind = "region";
    std::string quantity = "norm";
    double tolerance_scale = 1.0;
    std::vector<int> only;
};

// A command result plus its exit code.
struct Outcome {
    Json body;
    int code = kExitOk;
};

void print_table(std::ostream &out, const Json &body) {
    size_t width = 0;
    for (const auto &[k, v] : body.items()) width = std::max(width, k.size());
    for (const auto &[k, v] : body.items()) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << k;
        if (v.is_number_float()) {
            out << std::setprecision(12) << v.get<double>();
        } else if (v.is_string()) {
            out << v.get<std::string>();
        } else {
            out << v.dump();
        }
        out << '\n';
    }
}

Outcome norm_m(const Settings &s) {
    const auto a = load_tuple(s.tuple);
    const auto m = load_game(s.game);
    const auto d = m_bell_norm_details(a, m);
    const double beta = classical_bias(m);
    return {{{"norm_m", d.value},
             {"abs_sum_bound", d.abs_sum_bound},
             {"closed_form_exact", d.closed_form_exact},
             {"is_norm", d.is_norm},
             {"classical_bias", beta},
             {"bell_local", d.value <= beta + 1e-9}}};
}

Outcome norm_c(const Settings &s) { return {{{"norm_c", compatibility_norm(load_tuple(s.tuple))}}}; }

Outcome gamma(const Settings &s) { return {{{"gamma", gamma_threshold(load_tuple(s.tuple))}}}; }

Outcome compatible(const Settings &s) {
    const auto a = load_tuple(s.tuple);
    const auto verdict = is_compatible(a);
    Json body = {{"compatible", verdict.compatible}, {"norm_c", verdict.norm}, {"certificate", nullptr}};
    if (!s.certificate.empty() && verdict.certificate) {
        write_json_file(s.certificate, to_json(*verdict.certificate));
        body["certificate"] = s.certificate;
    }
    return {body};
}

Outcome bias(const Settings &s) { return {{{"classical_bias", classical_bias(load_game(s.game))}}}; }

Outcome qbias(const Settings &s) {
    const auto m = load_game(s.game);
    return {{{"quantum_bias", quantum_bias_sdp(m)}, {"classical_bias", classical_bias(m)}}};
}

Outcome uncertainty(const Settings &s) {
    const auto m = load_game(s.game);
    return {{{"uncertainty_product", uncertainty_product(m)},
             {"lower_bound", std::sqrt(static_cast<double>(m.n()) / 2.0)},
             {"hadamard", is_scaled_hadamard(m)}}};
}

Outcome seesaw(const Settings &s) {
    SeesawOptions opts;
    opts.restarts = s.restarts;
    opts.iterations = s.iterations;
    opts.seed = s.seed;
    const auto r = seesaw_bias(load_tuple(s.tuple), load_game(s.game), opts);
    return {{{"value", r.value}, {"converged", r.converged}, {"iterations", r.iterations}}};
}

std::vector<double> grid_or(const std::string &text, const char *fallback) {
    return parse_grid(text.empty() ? fallback : text);
}

Outcome scan(const Settings &s) {
    const PlotKind kind = parse_plot_kind(s.kind);
    const PlotQuantity quantity = parse_plot_quantity(s.quantity);
    const bool region = kind == PlotKind::Region;
    Json body = {{"family", s.family}, {"csv", s.csv}, {"svg", s.svg.empty() ? Json(nullptr) : Json(s.svg)}};
    size_t points = 0, violated = 0;
    if (s.family == "mt") {
        const auto grid = scan_deformed_chsh(grid_or(s.y_grid, "-1:1:0.01"),
                                             grid_or(s.t_grid, region ? "-4:4:0.02" : "-4,-2,0,0.5,1,2,4"));
        emit_csv(grid, s.csv);
        if (!s.svg.empty()) emit_svg(grid, s.svg, kind, quantity);
        points = grid.size();
        for (const auto &r : grid) violated += r.violated;
    } else {
        const auto grid = scan_biased_chsh(grid_or(s.y_grid, region ? "0,0.5,1" : "-1:1:0.01"),
                                           grid_or(s.p_grid, region ? "0:1:0.02" : "0.5"),
                                           grid_or(s.q_grid, region ? "0:1:0.02" : "0.5,0.6,0.75,0.9,1"));
        emit_csv(grid, s.csv);
        if (!s.svg.empty()) emit_svg(grid, s.svg, kind, quantity);
        points = grid.size();
        for (const auto &r : grid) violated += r.violated;
    }
    body["points"] = points;
    body["violated"] = violated;
    return {body};
}

Outcome verify(const Settings &s, std::ostream &out, bool pretty) {
    AcceptanceOptions opts;
    opts.tolerance_scale = s.tolerance_scale;
    opts.seed = s.seed;
    opts.only = s.only;
    for (int id : opts.only) {
        if (id < 1 || id > kCriterionCount) throw ValidationError("no acceptance criterion " + std::to_string(id));
    }
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
        results.push_back(run_criterion(id, opts));
        if (pretty) out << format_result_line(results.back()) << std::endl;
    }
    Json report = report_json(results);
    const bool ok = report["all_passed"].get<bool>();
    return {std::move(report), ok ? kExitOk : kExitValidation};
}

void error_json(std::ostream &err, const char *kind, const std::string &message) {
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bell-locality norms, measurement compatibility and XOR games", "belltensor"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_flag("--pretty", s.pretty, "human-readable table instead of JSON");

    auto add_game = [&](CLI::App *sub) {
        sub->add_option("--game", s.game, "game id (chsh, mt:<t>, gpq:<p>:<q>, i3322) or real-matrix JSON file")
            ->capture_default_str();
    };
    auto add_tuple = [&](CLI::App *sub) {
        sub->add_option("--tuple", s.tuple, "pauli:<x>[,<y>[,<z>]] or tuple JSON file")->required();
    };

    auto *c_norm_m = app.add_subcommand("norm-m", "M-Bell-locality norm ‖A‖_M");
    add_game(c_norm_m);
    add_tuple(c_norm_m);
    auto *c_norm_c = app.add_subcommand("norm-c", "compatibility norm ‖A‖_c");
    add_tuple(c_norm_c);
    auto *c_gamma = app.add_subcommand("gamma", "white-noise compatibility threshold 1/‖A‖_c");
    add_tuple(c_gamma);
    auto *c_compat = app.add_subcommand("compatible", "decide compatibility, optionally writing the joint POVM");
    add_tuple(c_compat);
    c_compat->add_option("--emit-certificate", s.certificate, "write the joint POVM JSON here when compatible");
    auto *c_bias = app.add_subcommand("bias", "classical bias β(M)");
    add_game(c_bias);
    auto *c_qbias = app.add_subcommand("qbias", "quantum bias β*(M) via the Tsirelson SDP");
    add_game(c_qbias);
    auto *c_unc = app.add_subcommand("uncertainty", "uncertainty product ‖M⁻¹‖·β(M)");
    add_game(c_unc);
    auto *c_seesaw = app.add_subcommand("seesaw", "see-saw lower bound on ‖A‖_M");
    add_game(c_seesaw);
    add_tuple(c_seesaw);
    c_seesaw->add_option("--restarts", s.restarts, "random restarts")->capture_default_str()->check(CLI::PositiveNumber);
    c_seesaw->add_option("--iters", s.iterations, "rounds per restart")->capture_default_str()->check(CLI::PositiveNumber);
    c_seesaw->add_option("--seed", s.seed, "random seed")->capture_default_str();
    auto *c_scan = app.add_subcommand("scan", "parameter sweep of the deformed (mt) or biased (gpq) CHSH family");
    c_scan->add_option("family", s.family, "mt or gpq")->required()->check(CLI::IsMember({"mt", "gpq"}));
    c_scan->add_option("--y", s.y_grid, "y grid, a:b:step or comma list");
    c_scan->add_option("--t", s.t_grid, "t grid (mt)");
    c_scan->add_option("--p", s.p_grid, "p grid (gpq)");
    c_scan->add_option("--q", s.q_grid, "q grid (gpq)");
    c_scan->add_option("--out", s.csv, "CSV output path")->required();
    c_scan->add_option("--svg", s.svg, "SVG output path");
    c_scan->add_option("--kind", s.kind, "region or curves")->capture_default_str()->check(CLI::IsMember({"region", "curves"}));
    c_scan->add_option("--quantity", s.quantity, "curve quantity: norm or ratio")
        ->capture_default_str()
        ->check(CLI::IsMember({"norm", "ratio"}));
    auto *c_verify = app.add_subcommand("verify", "run the acceptance suite");
    c_verify->add_option("--tolerance-scale", s.tolerance_scale, "multiply every tolerance")->capture_default_str();
    c_verify->add_option("--only", s.only, "criterion ids to run");
    c_verify->add_option("--seed", s.seed, "random seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        Outcome r;
        if (*c_norm_m) r = norm_m(s);
        else if (*c_norm_c) r = norm_c(s);
        else if (*c_gamma) r = gamma(s);
        else if (*c_compat) r = compatible(s);
        else if (*c_bias) r = bias(s);
        else if (*c_qbias) r = qbias(s);
        else if (*c_unc) r = uncertainty(s);
        else if (*c_seesaw) r = seesaw(s);
        else if (*c_scan) r = scan(s);
        else r = verify(s, out, s.pretty);

        if (!s.pretty) {
            out << r.body.dump() << '\n';
        } else if (!*c_verify) {
            print_table(out, r.body);
        }
        return r.code;
    } catch (const ValidationError &e) {
        error_json(err, "validation", e.what());
        return kExitValidation;
    } catch (const IoError &e) {
        error_json(err, "io", e.what());
        return kExitValidation;
    } catch (const Json::exception &e) {
        error_json(err, "validation", e.what());
        return kExitValidation;
    } catch (const std::exception &e) {
        error_json(err, "solver", e.what());
        return kExitSolver;
    }
}

int run(int argc, const char *const *argv) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace belltensor::cli

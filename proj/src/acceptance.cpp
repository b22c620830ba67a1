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

#include "belltensor/acceptance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "belltensor/bellnorm.hpp"
#include "belltensor/compat.hpp"
#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/sampling.hpp"
#include "belltensor/scan.hpp"

namespace belltensor {

namespace {

using std::numbers::sqrt2;

struct Context {
    double scale;
    Rng rng;
};

struct Outcome {
    bool passed;
    std::string detail;
};

// Largest observed value of a quantity that must stay below its tolerance.
struct MaxError {
    double value = 0.0;
    void add(double e) { value = std::max(value, std::isnan(e) ? INFINITY : e); }
};

MeasurementTuple pauli_pair(double y) {
    return MeasurementTuple(std::vector<HermitianMatrix>{sigma_x(), y * sigma_y()});
}

std::span<const double> as_span(const RVector &v) { return {v.data(), static_cast<size_t>(v.size())}; }

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Largest x in [lo, hi] with pred(x) true, assuming pred is true at lo and
// false at hi with a single switch between them.
double bisect_last_true(double lo, double hi, const std::function<bool(double)> &pred) {
    for (int k = 0; k < 200 && hi - lo > 1e-13; ++k) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome pauli_pair_norms(Context &c) {
    const auto start = std::chrono::steady_clock::now();
    MaxError sdp, route;
    for (int i = 0; i < 50; ++i) {
        const double y = -1.0 + 2.0 * i / 49.0;
        const double exact = std::sqrt(1 + y * y);
        sdp.add(std::abs(compatibility_norm(pauli_pair(y)) - exact));
        route.add(std::abs(m_bell_norm(pauli_pair(y), chsh()) - exact));
    }
    const double secs = elapsed(start);
    return {sdp.value <= 1e-5 * c.scale && route.value <= 1e-9 * c.scale && secs < 30.0,
            fmt::format("max error SDP {:.2e}, CHSH route {:.2e}, {:.2f} s", sdp.value, route.value, secs)};
}

Outcome pauli_triple_norms(Context &c) {
    const auto start = std::chrono::steady_clock::now();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MaxError err;
    for (int i = 0; i < 100; ++i) {
        const double x = unit(c.rng), y = unit(c.rng), z = unit(c.rng);
        err.add(std::abs(compatibility_norm(pauli_tuple(x, y, z)) - std::sqrt(x * x + y * y + z * z)));
    }
    const double secs = elapsed(start);
    return {err.value <= 1e-5 * c.scale && secs < 120.0, fmt::format("max error {:.2e}, {:.2f} s", err.value, secs)};
}

Outcome chsh_equivalence(Context &c) {
    MaxError err;
    for (int i = 0; i < 500; ++i) {
        const auto a = random_tuple(2, 2, c.rng);
        err.add(std::abs(compatibility_norm(a) - m_bell_norm(a, chsh())));
    }
    return {err.value <= 1e-5 * c.scale, fmt::format("max |‖A‖_c − ‖A‖_CHSH| = {:.2e} over 500 pairs", err.value)};
}

Outcome deformed_closed_form(Context &c) {
    const auto ys = arithmetic_grid(-1.0, 1.0, 0.01);
    const auto ts = arithmetic_grid(-4.0, 4.0, 0.05);
    const auto grid = scan_deformed_chsh(ys, ts);
    MaxError err;
    for (const auto &r : grid) err.add(std::abs(r.norm_m - deformed_chsh_closed_form(r.y, r.t)));

    // Bracket the y = 1 boundary on the grid, then refine.
    const size_t row = (ys.size() - 1) * ts.size();
    int switches = 0;
    double lo = 0.0, hi = 0.0;
    for (size_t j = 0; j + 1 < ts.size(); ++j) {
        if (!grid[row + j].violated && grid[row + j + 1].violated) {
            ++switches;
            lo = ts[j];
            hi = ts[j + 1];
        }
    }
    const MeasurementTuple a = pauli_pair(1.0);
    const double boundary = switches == 1 ? bisect_last_true(lo, hi, [&](double t) {
        return m_bell_norm(a, normalize(deformed_chsh(t))) <= 1.0;
    })
                                          : NAN;
    const double t_star = (9.0 - 4.0 * sqrt2) / 7.0;
    const double boundary_err = std::abs(boundary - t_star);
    return {err.value <= 1e-9 * c.scale && switches == 1 && boundary_err <= 1e-6 * c.scale,
            fmt::format("{}x{} grid max error {:.2e}; boundary t = {:.9f} (error {:.2e})", ys.size(), ts.size(),
                        err.value, boundary, boundary_err)};
}

Outcome biased_closed_form(Context &c) {
    const auto ys = arithmetic_grid(-1.0, 1.0, 0.1);
    const auto ps = arithmetic_grid(0.0, 1.0, 0.05);
    const auto grid = scan_biased_chsh(ys, ps, ps);
    MaxError err, line;
    size_t on_line = 0;
    for (const auto &r : grid) {
        err.add(std::abs(r.norm_g - biased_chsh_closed_form(r.y, r.p, r.q)));
        if (r.p == 0.5) {
            ++on_line;
            line.add(std::abs(r.norm_g - std::sqrt(1 + r.y * r.y) / (2 * std::max(r.q, 1 - r.q))));
        }
    }
    return {err.value <= 1e-9 * c.scale && line.value <= 1e-9 * c.scale && on_line > 0,
            fmt::format("{} points max error {:.2e}; p = 1/2 line ({} points) max error {:.2e}", grid.size(),
                        err.value, on_line, line.value)};
}

Outcome i3322_thresholds(Context &c) {
    const double s_c = bisect_last_true(0.0, 1.0, [](double s) { return compatibility_norm(pauli_tuple(s, s, s)) <= 1.0; });
    const GameMatrix g = i3322();
    const double s_m =
        bisect_last_true(0.0, 1.0, [&](double s) { return m_bell_norm(pauli_tuple(s, s, s), g) <= 1.0; });
    const double e_c = std::abs(s_c - 1.0 / std::sqrt(3.0));
    const double e_m = std::abs(s_m - 4.0 / (sqrt2 + 2.0 * std::sqrt(3.0)));
    return {e_c <= 1e-5 * c.scale && e_m <= 1e-6 * c.scale && s_c < s_m,
            fmt::format("compatibility threshold {:.9f} (error {:.2e}); I3322 threshold {:.9f} (error {:.2e})", s_c,
                        e_c, s_m, e_m)};
}

Outcome comparison_theorems(Context &c) {
    const double slack = 1e-6 * c.scale;
    int failures = 0;
    MaxError upper, lower;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index d = 2 + i % 2, n = 2 + (i / 2) % 2;
        const auto a = random_tuple(n, d, c.rng);
        const auto m = random_invertible_game(n, c.rng);
        const double nc = compatibility_norm(a), nm = m_bell_norm(a, m);
        const double up = nm - nc * classical_bias(m);
        const double lo = nc - nm * linf_injective_norm(m.inverse());
        upper.add(up);
        lower.add(lo);
        if (up > slack || lo > slack) ++failures;
    }
    return {failures == 0, fmt::format("{} failures; worst excess {:.2e} (upper), {:.2e} (lower)", failures,
                                       upper.value, lower.value)};
}

Outcome strong_duality(Context &c) {
    MaxError duality, gamma;
    for (int i = 0; i < 200; ++i) {
        const auto p = random_effect(2, c.rng), q = random_effect(2, c.rng);
        duality.add(std::abs(epsilon_star_primal(p, q) - epsilon_star_dual(p, q)));
        const MeasurementTuple a(std::vector<Observable>{observable_from_effect(p), observable_from_effect(q)});
        gamma.add(std::abs(gamma_threshold_pair(a) - gamma_threshold(a)));
    }
    return {duality.value <= 1e-6 * c.scale && gamma.value <= 1e-5 * c.scale,
            fmt::format("max |ε₀ − ε*| = {:.2e}; max Γ route gap {:.2e}", duality.value, gamma.value)};
}

Outcome uncertainty_relation(Context &c) {
    const double slack = 1e-9 * c.scale;
    int bound_failures = 0;
    double worst = INFINITY;
    for (Eigen::Index n = 2; n <= 6; ++n) {
        for (int i = 0; i < 500; ++i) {
            const auto m = random_invertible_game(n, c.rng);
            const double gap = uncertainty_product(m) - std::sqrt(n / 2.0);
            worst = std::min(worst, gap);
            if (gap < -slack) ++bound_failures;
        }
    }

    std::vector<RMatrix> candidates;
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> mag(0.1, 5.0), tiny(1e-4, 1e-2);
    std::uniform_int_distribution<int> coin(0, 1), small_int(-3, 3);
    for (int i = 0; i < 10000; ++i) {
        RMatrix m(2, 2);
        switch (i % 4) {
            case 0:
                m << normal(c.rng), normal(c.rng), normal(c.rng), normal(c.rng);
                break;
            case 1:
            case 2: {
                const double a = (coin(c.rng) ? 1 : -1) * mag(c.rng);
                for (Eigen::Index k = 0; k < 4; ++k) m(k / 2, k % 2) = coin(c.rng) ? a : -a;
                if (i % 4 == 2) m(coin(c.rng), coin(c.rng)) += (coin(c.rng) ? 1 : -1) * tiny(c.rng);
                break;
            }
            default:
                m << small_int(c.rng), small_int(c.rng), small_int(c.rng), small_int(c.rng);
        }
        if (is_invertible(m)) candidates.push_back(m);
    }
    for (double a : {-3.0, -1.0, -0.5, 0.25, 1.0, 2.0, 10.0}) candidates.push_back(a * chsh().matrix());

    int mismatches = 0, hadamards = 0;
    for (const auto &m : candidates) {
        const GameMatrix g(m);
        const bool unit = std::abs(uncertainty_product(g) - 1.0) <= slack;
        const bool hadamard = is_scaled_hadamard(g);
        hadamards += hadamard;
        if (unit != hadamard) ++mismatches;
    }
    return {bound_failures == 0 && mismatches == 0 && hadamards > 0,
            fmt::format("{} bound failures (min margin {:.2e}); {} equality mismatches among {} N=2 candidates "
                        "({} scaled Hadamard)",
                        bound_failures, worst, mismatches, candidates.size(), hadamards)};
}

Outcome seesaw_oracle(Context &c) {
    MaxError gap, decrease;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index d = 2 + i % 2, n = 2 + (i / 2) % 2;
        const auto a = random_tuple(n, d, c.rng);
        const auto m = random_invertible_game(n, c.rng);
        SeesawOptions opts;
        opts.restarts = 20;
        opts.iterations = 2000;
        opts.seed = static_cast<std::uint64_t>(i);
        const auto r = seesaw_bias(a, m, opts);
        gap.add(std::abs(m_bell_norm(a, m) - r.value));
        decrease.add(r.max_decrease);
    }
    return {gap.value <= 1e-4 * c.scale && decrease.value <= 1e-12 * c.scale,
            fmt::format("max gap to ‖A‖_M {:.2e}; largest per-step decrease {:.2e}", gap.value, decrease.value)};
}

Outcome quantum_bias(Context &c) {
    const double chsh_err = std::abs(quantum_bias_sdp(chsh()) - sqrt2);
    const double slack = 1e-7 * c.scale;
    int failures = 0;
    std::normal_distribution<double> normal;
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index n = 2 + i % 4;
        RMatrix m(n, n);
        for (Eigen::Index k = 0; k < n * n; ++k) m(k / n, k % n) = normal(c.rng);
        const double beta = classical_bias(m), qb = quantum_bias_sdp(GameMatrix(m));
        if (qb < beta - slack || qb > kKrivineBound * beta + slack) ++failures;
    }
    return {chsh_err <= 1e-5 * c.scale && failures == 0,
            fmt::format("CHSH error {:.2e}; {} of 200 random games outside [β, 1.7823 β]", chsh_err, failures)};
}

struct AxiomTally {
    int triangle = 0, homogeneity = 0, definiteness = 0;
    int total() const { return triangle + homogeneity + definiteness; }
    std::string str(const char *name) const {
        return fmt::format("{}: {}/{}/{}", name, triangle, homogeneity, definiteness);
    }
};

Outcome norm_axioms(Context &c) {
    std::uniform_real_distribution<double> alpha(-3.0, 3.0), eta(0.0, 1.0);
    std::uniform_int_distribution<int> exponent(0, 7);
    AxiomTally bell, vec, comp;

    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index d = 2 + i % 2, n = 2 + (i / 2) % 2;
        const auto m = random_invertible_game(n, c.rng);
        const auto a = random_tuple(n, d, c.rng), b = random_tuple(n, d, c.rng);
        const double na = m_bell_norm(a, m), nb = m_bell_norm(b, m);
        if (m_bell_norm(a + b, m) > na + nb + 1e-9 * c.scale) ++bell.triangle;
        const double s = alpha(c.rng);
        if (std::abs(m_bell_norm(a.scaled(s), m) - std::abs(s) * na) > 1e-12 * c.scale * std::max(1.0, std::abs(s) * na)) {
            ++bell.homogeneity;
        }
        const auto small = a.scaled(std::pow(10.0, -exponent(c.rng)));
        double max_entry = 0.0;
        for (const auto &o : small.observables()) max_entry = std::max(max_entry, o.matrix().matrix().cwiseAbs().maxCoeff());
        const double ns = m_bell_norm(small, m);
        if (ns < 1e-8 && max_entry >= 1e-6) ++bell.definiteness;
        if (m_bell_norm(MeasurementTuple::zero(n, d), m) != 0.0) ++bell.definiteness;
    }

    std::normal_distribution<double> normal;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index n = 2 + i % 5;
        const auto m = random_invertible_game(n, c.rng);
        RVector p(n), q(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            p(k) = normal(c.rng);
            q(k) = normal(c.rng);
        }
        const RVector pq = p + q;
        const double np = vector_m_norm(as_span(p), m), nq = vector_m_norm(as_span(q), m);
        if (vector_m_norm(as_span(pq), m) > np + nq + 1e-10 * c.scale * std::max(1.0, np + nq)) ++vec.triangle;
        const double s = alpha(c.rng);
        const RVector sp = s * p;
        if (std::abs(vector_m_norm(as_span(sp), m) - std::abs(s) * np) > 1e-12 * c.scale * std::max(1.0, std::abs(s) * np)) {
            ++vec.homogeneity;
        }
        const RVector zero = RVector::Zero(n);
        if (vector_m_norm(as_span(zero), m) != 0.0 || !(np > 0.0)) ++vec.definiteness;
    }

    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index d = 2 + i % 2, n = 2 + (i / 2) % 2;
        const auto a = random_tuple(n, d, c.rng), b = random_tuple(n, d, c.rng);
        const double na = compatibility_norm(a), nb = compatibility_norm(b);
        if (compatibility_norm(a + b) > na + nb + 1e-6 * c.scale) ++comp.triangle;
        const double e = eta(c.rng);
        if (std::abs(compatibility_norm(a.scaled(e)) - e * na) > 1e-6 * c.scale ||
            std::abs(compatibility_norm(a.scaled(-1.0)) - na) > 1e-6 * c.scale) {
            ++comp.homogeneity;
        }
        if (compatibility_norm(MeasurementTuple::zero(n, d)) != 0.0 || na < a.injective_norm() - 1e-7 * c.scale ||
            !(na > 0.0)) {
            ++comp.definiteness;
        }
    }
    return {bell.total() + vec.total() + comp.total() == 0,
            "violations triangle/homogeneity/definiteness, 1000 trials each: " + bell.str("‖·‖_M") + ", " +
                vec.str("‖p‖_M") + ", " + comp.str("‖·‖_c")};
}

struct Criterion {
    const char *name;
    Outcome (*run)(Context &);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"Pauli pair compatibility norm", pauli_pair_norms},
    {"Pauli triple compatibility norm", pauli_triple_norms},
    {"CHSH norm equals compatibility norm", chsh_equivalence},
    {"deformed CHSH closed form and violation boundary", deformed_closed_form},
    {"biased CHSH closed form", biased_closed_form},
    {"I3322 thresholds", i3322_thresholds},
    {"comparison theorems", comparison_theorems},
    {"strong duality and noise threshold routes", strong_duality},
    {"uncertainty relation", uncertainty_relation},
    {"see-saw lower bound", seesaw_oracle},
    {"quantum bias", quantum_bias},
    {"norm axioms", norm_axioms},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions &options) {
    if (id < 1 || id > kCriterionCount) throw ValidationError(fmt::format("no acceptance criterion {}", id));
    const Criterion &crit = kCriteria[id - 1];
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(id)};
    Context ctx{options.tolerance_scale, Rng(seq)};
    CriterionResult r;
    r.id = id;
    r.name = crit.name;
    const auto start = std::chrono::steady_clock::now();
    try {
        auto out = crit.run(ctx);
        r.passed = out.passed;
        r.detail = std::move(out.detail);
    } catch (const std::exception &e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = elapsed(start);
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
            continue;
        }
        results.push_back(run_criterion(id, options));
    }
    return results;
}

nlohmann::json report_json(const std::vector<CriterionResult> &results) {
    nlohmann::json list = nlohmann::json::array();
    int passed = 0;
    for (const auto &r : results) {
        passed += r.passed;
        list.push_back(
            {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    const int failed = static_cast<int>(results.size()) - passed;
    return {{"criteria", std::move(list)}, {"passed", passed}, {"failed", failed}, {"all_passed", failed == 0}};
}

std::string format_result_line(const CriterionResult &r) {
    return fmt::format("{} {:>2} {} ({:.2f} s): {}", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds, r.detail);
}

}  // namespace belltensor

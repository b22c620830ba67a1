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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/scan.hpp"
#include "doctest.h"

using namespace belltensor;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("belltensor_scan_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

size_t count(const std::string &haystack, const std::string &needle) {
    size_t n = 0;
    for (size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("deformed CHSH scan examples") {
    const std::vector<double> ys{-1.0, 0.0, 0.5, 1.0};
    const std::vector<double> ts{-4.0, -1.0, 0.0, 1.0, 3.0};
    const auto grid = scan_deformed_chsh(ys, ts);
    REQUIRE(grid.size() == ys.size() * ts.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto &r = grid[i];
        CHECK(r.y == ys[i / ts.size()]);
        CHECK(r.t == ts[i % ts.size()]);
        CHECK(r.invertible == (r.t != -1.0));
        CHECK(std::abs(r.norm_m - deformed_chsh_closed_form(r.y, r.t)) <= 1e-9);
        CHECK(std::abs(r.norm_c - std::sqrt(1 + r.y * r.y)) <= 1e-9);
        CHECK(r.ratio == doctest::Approx(r.norm_m / r.norm_c).epsilon(1e-14));
        CHECK(r.violated == (r.norm_m > 1.0 + kViolationSlack));
        if (r.y == 0.0) {
            CHECK(std::abs(r.norm_m - 2.0 / (2.0 + std::abs(r.t - 1.0))) <= 1e-12);
            CHECK_FALSE(r.violated);
        }
        if (r.y == 1.0 && r.t == 1.0) {
            CHECK(std::abs(r.norm_m - std::sqrt(2.0)) <= 1e-12);
            CHECK(r.violated);
        }
    }
}

TEST_CASE("deformed CHSH boundary") {
    const double t_star = (9.0 - 4.0 * std::sqrt(2.0)) / 7.0;
    const std::vector<double> ys{1.0};
    const std::vector<double> ts{t_star - 1e-4, t_star + 1e-4};
    const auto grid = scan_deformed_chsh(ys, ts);
    CHECK_FALSE(grid[0].violated);
    CHECK(grid[1].violated);
    CHECK(std::abs(deformed_chsh_closed_form(1.0, t_star) - 1.0) <= 1e-12);
}

TEST_CASE("scan invariants") {
    const auto ys = arithmetic_grid(-1.0, 1.0, 0.25);
    const auto ts = arithmetic_grid(-4.0, 4.0, 0.5);
    for (const auto &r : scan_deformed_chsh(ys, ts)) {
        if (!r.invertible) continue;
        const GameMatrix m = normalize(deformed_chsh(r.t));
        CHECK(r.norm_m <= r.norm_c * classical_bias(m) + 1e-6);
        CHECK(r.norm_c <= r.norm_m * linf_injective_norm(m.inverse()) + 1e-6);
        CHECK(r.ratio <= 1.0 + 1e-9);
        if (r.y != 0.0) CHECK((std::abs(r.ratio - 1.0) <= 1e-9) == (r.t == 1.0));
    }
}

TEST_CASE("biased CHSH scan") {
    const std::vector<double> ys{0.0, 0.5, 1.0};
    const auto ps = arithmetic_grid(0.0, 1.0, 0.25);
    const auto qs = arithmetic_grid(0.0, 1.0, 0.25);
    const auto grid = scan_biased_chsh(ys, ps, qs);
    REQUIRE(grid.size() == ys.size() * ps.size() * qs.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto &r = grid[i];
        CHECK(r.y == ys[i / (ps.size() * qs.size())]);
        CHECK(r.p == ps[(i / qs.size()) % ps.size()]);
        CHECK(r.q == qs[i % qs.size()]);
        const bool edge = r.p == 0.0 || r.p == 1.0 || r.q == 0.0 || r.q == 1.0;
        CHECK(r.invertible == !edge);
        CHECK(std::abs(r.norm_g - biased_chsh_closed_form(r.y, r.p, r.q)) <= 1e-9);
        if (r.p == 0.5) {
            const double expected = std::sqrt(1 + r.y * r.y) / (2.0 * std::max(r.q, 1.0 - r.q));
            CHECK(std::abs(r.norm_g - expected) <= 1e-9);
        }
        if (r.invertible) {
            const GameMatrix m = normalize(biased_chsh(r.p, r.q));
            CHECK(r.norm_g <= r.norm_c * classical_bias(m) + 1e-6);
            CHECK(r.norm_c <= r.norm_g * linf_injective_norm(m.inverse()) + 1e-6);
        }
    }
    CHECK(biased_chsh_closed_form(0.0, 0.5, 0.5) == doctest::Approx(1.0));
    CHECK(biased_chsh_closed_form(1.0, 0.5, 0.5) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("grids") {
    const auto g = arithmetic_grid(-1.0, 1.0, 0.01);
    CHECK(g.size() == 201);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    CHECK(g[100] == doctest::Approx(0.0));
    CHECK(arithmetic_grid(2.0, 2.0, 0.5) == std::vector<double>{2.0});
    CHECK_THROWS_AS(arithmetic_grid(0.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(arithmetic_grid(1.0, 0.0, 0.1), ValidationError);
    CHECK_THROWS_AS(arithmetic_grid(0.0, 1.0, 1e-9), ValidationError);

    CHECK(parse_grid("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_grid("-4,-2,0.5") == std::vector<double>{-4.0, -2.0, 0.5});
    CHECK(parse_grid("3") == std::vector<double>{3.0});
    CHECK_THROWS_AS(parse_grid("0:1"), ValidationError);
    CHECK_THROWS_AS(parse_grid("a,b"), ValidationError);
    CHECK_THROWS_AS(parse_grid(""), ValidationError);

    CHECK(parse_plot_kind("region") == PlotKind::Region);
    CHECK(parse_plot_kind("curves") == PlotKind::Curves);
    CHECK_THROWS_AS(parse_plot_kind("bars"), ValidationError);
    CHECK(parse_plot_quantity("ratio") == PlotQuantity::Ratio);
    CHECK_THROWS_AS(parse_plot_quantity("area"), ValidationError);
}

TEST_CASE("CSV output") {
    TempDir tmp;
    const std::vector<double> ys{0.0, 0.5, 1.0}, ts{1.0};
    const auto grid = scan_deformed_chsh(ys, ts);
    const auto csv = tmp.path / "mt.csv";
    emit_csv(grid, csv);
    const auto rows = lines(slurp(csv));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "y,t,norm_m,norm_c,ratio,violated,invertible");
    CHECK(rows[3].rfind("1,1,1.41421356237,1.41421356237,1,true,true", 0) == 0);
    CHECK(rows[1].find("false") != std::string::npos);

    const std::vector<double> ps{0.5}, qs{0.5};
    const auto biased = scan_biased_chsh(ys, ps, qs);
    emit_csv(biased, tmp.path / "gpq.csv");
    const auto brows = lines(slurp(tmp.path / "gpq.csv"));
    REQUIRE(brows.size() == 4);
    CHECK(brows[0] == "y,p,q,norm_g,norm_c,ratio,violated,invertible");

    CHECK_THROWS_AS(emit_csv(DeformedGrid{}, tmp.path / "empty.csv"), ValidationError);
    const auto bad = tmp.path / "missing" / "dir" / "x.csv";
    try {
        emit_csv(grid, bad);
        FAIL("expected an I/O error");
    } catch (const IoError &e) {
        CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
    }
}

TEST_CASE("SVG output") {
    TempDir tmp;
    const auto ys = arithmetic_grid(-1.0, 1.0, 0.1);
    const auto ts = arithmetic_grid(-1.0, 2.0, 0.25);
    const auto grid = scan_deformed_chsh(ys, ts);
    const auto violated = std::count_if(grid.begin(), grid.end(), [](const auto &r) { return r.violated; });
    REQUIRE(violated > 0);

    emit_svg(grid, tmp.path / "region.svg", PlotKind::Region);
    const std::string region = slurp(tmp.path / "region.svg");
    CHECK(region.rfind("<svg", 0) == 0);
    CHECK(region.find("</svg>") != std::string::npos);
    CHECK(count(region, "class=\"cell\"") == static_cast<size_t>(violated));
    CHECK(region.find("href") == std::string::npos);

    const std::vector<double> curve_ts{-4.0, -2.0, 0.0, 0.5, 1.0, 2.0, 4.0};
    const auto curves = scan_deformed_chsh(ys, curve_ts);
    emit_svg(curves, tmp.path / "curves.svg", PlotKind::Curves, PlotQuantity::Ratio);
    CHECK(count(slurp(tmp.path / "curves.svg"), "class=\"curve\"") == curve_ts.size());

    const std::vector<double> bys{0.0, 1.0}, ps{0.5}, qs{0.5, 0.75, 1.0};
    const auto biased = scan_biased_chsh(ys, ps, qs);
    emit_svg(biased, tmp.path / "gpq.svg", PlotKind::Curves);
    CHECK(count(slurp(tmp.path / "gpq.svg"), "class=\"curve\"") == qs.size());

    const auto region_b = scan_biased_chsh(bys, arithmetic_grid(0, 1, 0.1), arithmetic_grid(0, 1, 0.1));
    const auto bviolated = std::count_if(region_b.begin(), region_b.end(), [](const auto &r) { return r.violated; });
    emit_svg(region_b, tmp.path / "gpq_region.svg", PlotKind::Region);
    CHECK(count(slurp(tmp.path / "gpq_region.svg"), "class=\"cell\"") == static_cast<size_t>(bviolated));

    CHECK_THROWS_AS(emit_svg(grid, tmp.path / "no" / "x.svg", PlotKind::Region), IoError);
}

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

#include "belltensor/scan.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "belltensor/bellnorm.hpp"
#include "belltensor/error.hpp"
#include "belltensor/games.hpp"
#include "belltensor/measurements.hpp"
#include "belltensor/parallel.hpp"

namespace belltensor {

namespace {

MeasurementTuple pauli_pair(double y) {
    return MeasurementTuple(std::vector<HermitianMatrix>{sigma_x(), y * sigma_y()});
}

std::vector<double> chsh_norms(std::span<const double> y_grid) {
    std::vector<double> out(y_grid.size());
    const GameMatrix g = chsh();
    parallel_for(y_grid.size(), [&](size_t i) { out[i] = m_bell_norm(pauli_pair(y_grid[i]), g); });
    return out;
}

void require_nonempty(std::span<const double> grid, const char *name) {
    if (grid.empty()) throw ValidationError(std::string(name) + " grid is empty");
    for (double v : grid) {
        if (!std::isfinite(v)) throw ValidationError(std::string(name) + " grid contains a non-finite value");
    }
}

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ValidationError("cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_output(std::ofstream &out, const std::filesystem::path &path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string num(double v) { return fmt::format("{:.12g}", v); }
const char *boolean(bool b) { return b ? "true" : "false"; }

// Plot geometry and styling.

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 52.0;
constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    double map(double v, double a, double b) const { return hi == lo ? (a + b) / 2 : a + (v - lo) / (hi - lo) * (b - a); }
};

std::vector<double> distinct_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

double min_spacing(const std::vector<double> &sorted) {
    double s = 0.0;
    for (size_t i = 1; i < sorted.size(); ++i) {
        const double d = sorted[i] - sorted[i - 1];
        if (s == 0.0 || d < s) s = d;
    }
    return s > 0.0 ? s : 1.0;
}

class SvgWriter {
   public:
    SvgWriter(double width, double height) {
        out_ << fmt::format(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", width,
            height);
        out_ << "<style>text{font-family:Helvetica,Arial,sans-serif;font-size:12px;fill:#222}"
                ".axis{stroke:#222;stroke-width:1;fill:none}"
                ".cell{fill:#4a78b5;stroke:none;shape-rendering:crispEdges}"
                ".frame{fill:#f7f7f7;stroke:#222;stroke-width:1}"
                ".curve{fill:none;stroke-width:1.6}"
                ".ref{stroke:#999;stroke-dasharray:4 3;stroke-width:1}</style>\n";
        out_ << fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", width, height);
    }

    void rect(double x, double y, double w, double h, const char *cls) {
        out_ << fmt::format("<rect class=\"{}\" x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\"/>\n", cls,
                            x, y, w, h);
    }

    void line(double x1, double y1, double x2, double y2, const char *cls) {
        out_ << fmt::format("<line class=\"{}\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", cls, x1,
                            y1, x2, y2);
    }

    void swatch(double x1, double x2, double y, const char *color) {
        out_ << fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"{}\" stroke-width=\"3\"/>\n",
                            x1, y, x2, y, color);
    }

    void text(double x, double y, const std::string &s, const char *anchor = "middle") {
        out_ << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"{}\">{}</text>\n", x, y, anchor, s);
    }

    void polyline(const std::vector<std::pair<double, double>> &pts, const char *color) {
        out_ << fmt::format("<polyline class=\"curve\" stroke=\"{}\" points=\"", color);
        for (size_t i = 0; i < pts.size(); ++i) {
            out_ << fmt::format("{}{:.3f},{:.3f}", i ? " " : "", pts[i].first, pts[i].second);
        }
        out_ << "\"/>\n";
    }

    // Frame with tick labels at both ends and the midpoint of the tick
    // ranges; xr and yr map data to the frame.
    void axes(double x0, double y0, double x1, double y1, Range xr, Range yr, Range xt, Range yt,
              const std::string &xlabel, const std::string &ylabel) {
        rect(x0, y0, x1 - x0, y1 - y0, "frame");
        for (double f : {0.0, 0.5, 1.0}) {
            const double xv = xt.lo + f * (xt.hi - xt.lo);
            const double yv = yt.lo + f * (yt.hi - yt.lo);
            const double px = xr.map(xv, x0, x1);
            const double py = yr.map(yv, y1, y0);
            line(px, y1, px, y1 + 4, "axis");
            text(px, y1 + 16, fmt::format("{:.3g}", xv));
            line(x0 - 4, py, x0, py, "axis");
            text(x0 - 6, py + 4, fmt::format("{:.3g}", yv), "end");
        }
        text((x0 + x1) / 2, y1 + 34, xlabel);
        out_ << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\" transform=\"rotate(-90 {:.3f} {:.3f})\">{}</text>\n",
                            x0 - 44, (y0 + y1) / 2, x0 - 44, (y0 + y1) / 2, ylabel);
    }

    void save(const std::filesystem::path &path) {
        out_ << "</svg>\n";
        auto f = open_output(path);
        f << out_.str();
        finish_output(f, path);
    }

   private:
    std::ostringstream out_;
};

struct CellPoint {
    double x, y;
    bool filled;
};

void draw_cells(SvgWriter &svg, const std::vector<CellPoint> &pts, double x0, double y0, double x1, double y1,
                const std::string &xlabel, const std::string &ylabel) {
    std::vector<double> xs, ys;
    for (const auto &p : pts) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    xs = distinct_sorted(xs);
    ys = distinct_sorted(ys);
    const double dx = min_spacing(xs), dy = min_spacing(ys);
    const Range xr{xs.front() - dx / 2, xs.back() + dx / 2};
    const Range yr{ys.front() - dy / 2, ys.back() + dy / 2};
    svg.axes(x0, y0, x1, y1, xr, yr, {xs.front(), xs.back()}, {ys.front(), ys.back()}, xlabel, ylabel);
    const double cw = (x1 - x0) * dx / (xr.hi - xr.lo);
    const double ch = (y1 - y0) * dy / (yr.hi - yr.lo);
    for (const auto &p : pts) {
        if (!p.filled) continue;
        svg.rect(xr.map(p.x, x0, x1) - cw / 2, yr.map(p.y, y1, y0) - ch / 2, cw, ch, "cell");
    }
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

void draw_curves(const std::vector<Series> &series, const std::string &ylabel, const std::filesystem::path &path,
                 bool unit_reference) {
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool first = true;
    for (const auto &s : series) {
        for (auto [x, y] : s.points) {
            if (first) {
                xlo = xhi = x;
                ylo = yhi = y;
                first = false;
            }
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (unit_reference) {
        ylo = std::min(ylo, 1.0);
        yhi = std::max(yhi, 1.0);
    }
    const double pad = (yhi - ylo) * 0.05 + 1e-9;
    const Range xr{xlo, xhi}, yr{ylo - pad, yhi + pad};
    const double x0 = kMarginLeft, y0 = kMarginTop, x1 = kWidth - kMarginRight, y1 = kHeight - kMarginBottom;

    SvgWriter svg(kWidth, kHeight);
    svg.axes(x0, y0, x1, y1, xr, yr, xr, yr, "y", ylabel);
    if (unit_reference) svg.line(x0, yr.map(1.0, y1, y0), x1, yr.map(1.0, y1, y0), "ref");
    for (size_t k = 0; k < series.size(); ++k) {
        const char *color = kPalette[k % std::size(kPalette)];
        std::vector<std::pair<double, double>> px;
        for (auto [x, y] : series[k].points) px.emplace_back(xr.map(x, x0, x1), yr.map(y, y1, y0));
        svg.polyline(px, color);
        const double ly = y0 + 14.0 + 16.0 * static_cast<double>(k);
        svg.swatch(x1 + 12, x1 + 32, ly - 4, color);
        svg.text(x1 + 38, ly, series[k].label, "start");
    }
    svg.save(path);
}

}  // namespace

double deformed_chsh_closed_form(double y, double t) {
    return (std::sqrt(1 + (y * t) * (y * t)) + std::sqrt(1 + y * y)) / (2 + std::abs(t - 1));
}

double biased_chsh_closed_form(double y, double p, double q) {
    const double a = std::sqrt(p * p * q * q + y * y * q * q * (1 - p) * (1 - p));
    const double b = std::sqrt(p * p * (1 - q) * (1 - q) + y * y * (1 - p) * (1 - p) * (1 - q) * (1 - q));
    return (a + b) / std::abs(1 - 2 * std::min(p, 1 - p) * std::min(q, 1 - q));
}

DeformedGrid scan_deformed_chsh(std::span<const double> y_grid, std::span<const double> t_grid) {
    require_nonempty(y_grid, "y");
    require_nonempty(t_grid, "t");
    const std::vector<double> norm_c = chsh_norms(y_grid);
    std::vector<std::optional<GameMatrix>> games(t_grid.size());
    for (size_t j = 0; j < t_grid.size(); ++j) games[j] = normalize(deformed_chsh(t_grid[j]));

    DeformedGrid grid(y_grid.size() * t_grid.size());
    parallel_for(grid.size(), [&](size_t k) {
        const size_t i = k / t_grid.size(), j = k % t_grid.size();
        auto &r = grid[k];
        r.y = y_grid[i];
        r.t = t_grid[j];
        r.norm_m = m_bell_norm(pauli_pair(r.y), *games[j]);
        r.norm_c = norm_c[i];
        r.ratio = r.norm_m / r.norm_c;
        r.violated = r.norm_m > 1.0 + kViolationSlack;
        r.invertible = games[j]->invertible();
    });
    return grid;
}

BiasedGrid scan_biased_chsh(std::span<const double> y_grid, std::span<const double> p_grid,
                            std::span<const double> q_grid) {
    require_nonempty(y_grid, "y");
    require_nonempty(p_grid, "p");
    require_nonempty(q_grid, "q");
    const std::vector<double> norm_c = chsh_norms(y_grid);
    const size_t npq = p_grid.size() * q_grid.size();
    std::vector<std::optional<GameMatrix>> games(npq);
    for (size_t k = 0; k < npq; ++k) games[k] = normalize(biased_chsh(p_grid[k / q_grid.size()], q_grid[k % q_grid.size()]));

    BiasedGrid grid(y_grid.size() * npq);
    parallel_for(grid.size(), [&](size_t k) {
        const size_t i = k / npq, g = k % npq;
        auto &r = grid[k];
        r.y = y_grid[i];
        r.p = p_grid[g / q_grid.size()];
        r.q = q_grid[g % q_grid.size()];
        r.norm_g = m_bell_norm(pauli_pair(r.y), *games[g]);
        r.norm_c = norm_c[i];
        r.ratio = r.norm_g / r.norm_c;
        r.violated = r.norm_g > 1.0 + kViolationSlack;
        r.invertible = games[g]->invertible();
    });
    return grid;
}

std::vector<double> arithmetic_grid(double a, double b, double step) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(step)) throw ValidationError("grid bounds must be finite");
    if (step <= 0.0) throw ValidationError("grid step must be positive");
    if (b < a) throw ValidationError("grid upper bound is below the lower bound");
    const double span = (b - a) / step;
    const auto count = static_cast<size_t>(std::floor(span + 1e-9)) + 1;
    if (count > 10'000'000) throw ValidationError("grid has too many points");
    std::vector<double> out(count);
    for (size_t i = 0; i < count; ++i) out[i] = a + static_cast<double>(i) * step;
    if (std::abs(out.back() - b) <= 1e-9 * std::max(1.0, std::abs(b))) out.back() = b;
    return out;
}

std::vector<double> parse_grid(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        size_t start = 0;
        while (true) {
            const size_t colon = text.find(':', start);
            parts.push_back(parse_number(text.substr(start, colon - start)));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3) throw ValidationError("range grid must be 'a:b:step', got '" + std::string(text) + "'");
        return arithmetic_grid(parts[0], parts[1], parts[2]);
    }
    std::vector<double> out;
    size_t start = 0;
    while (true) {
        const size_t comma = text.find(',', start);
        out.push_back(parse_number(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

PlotKind parse_plot_kind(std::string_view s) {
    if (s == "region") return PlotKind::Region;
    if (s == "curves") return PlotKind::Curves;
    throw ValidationError("plot kind must be 'region' or 'curves', got '" + std::string(s) + "'");
}

PlotQuantity parse_plot_quantity(std::string_view s) {
    if (s == "norm") return PlotQuantity::Norm;
    if (s == "ratio") return PlotQuantity::Ratio;
    throw ValidationError("plot quantity must be 'norm' or 'ratio', got '" + std::string(s) + "'");
}

void emit_csv(const DeformedGrid &grid, const std::filesystem::path &path) {
    if (grid.empty()) throw ValidationError("cannot emit an empty grid");
    auto out = open_output(path);
    out << "y,t,norm_m,norm_c,ratio,violated,invertible\n";
    for (const auto &r : grid) {
        out << num(r.y) << ',' << num(r.t) << ',' << num(r.norm_m) << ',' << num(r.norm_c) << ',' << num(r.ratio)
            << ',' << boolean(r.violated) << ',' << boolean(r.invertible) << '\n';
    }
    finish_output(out, path);
}

void emit_csv(const BiasedGrid &grid, const std::filesystem::path &path) {
    if (grid.empty()) throw ValidationError("cannot emit an empty grid");
    auto out = open_output(path);
    out << "y,p,q,norm_g,norm_c,ratio,violated,invertible\n";
    for (const auto &r : grid) {
        out << num(r.y) << ',' << num(r.p) << ',' << num(r.q) << ',' << num(r.norm_g) << ',' << num(r.norm_c) << ','
            << num(r.ratio) << ',' << boolean(r.violated) << ',' << boolean(r.invertible) << '\n';
    }
    finish_output(out, path);
}

void emit_svg(const DeformedGrid &grid, const std::filesystem::path &path, PlotKind kind, PlotQuantity quantity) {
    if (grid.empty()) throw ValidationError("cannot emit an empty grid");
    if (kind == PlotKind::Region) {
        std::vector<CellPoint> pts;
        for (const auto &r : grid) pts.push_back({r.y, r.t, r.violated});
        SvgWriter svg(kWidth, kHeight);
        svg.text(kWidth / 2, 20, "violation region of the deformed CHSH game");
        draw_cells(svg, pts, kMarginLeft, kMarginTop, kWidth - kMarginRight, kHeight - kMarginBottom, "y", "t");
        svg.save(path);
        return;
    }
    std::map<double, Series> groups;
    for (const auto &r : grid) {
        groups[r.t].points.emplace_back(r.y, quantity == PlotQuantity::Ratio ? r.ratio : r.norm_m);
    }
    std::vector<Series> series;
    for (auto &[t, s] : groups) {
        std::sort(s.points.begin(), s.points.end());
        s.label = "t = " + fmt::format("{:.4g}", t);
        series.push_back(std::move(s));
    }
    draw_curves(series, quantity == PlotQuantity::Ratio ? "norm ratio" : "norm", path, quantity == PlotQuantity::Norm);
}

void emit_svg(const BiasedGrid &grid, const std::filesystem::path &path, PlotKind kind, PlotQuantity quantity) {
    if (grid.empty()) throw ValidationError("cannot emit an empty grid");
    if (kind == PlotKind::Region) {
        std::map<double, std::vector<CellPoint>> panels;
        for (const auto &r : grid) panels[r.y].push_back({r.p, r.q, r.violated});
        constexpr double panel = 220.0, gap = 70.0;
        const double width = gap + static_cast<double>(panels.size()) * (panel + gap);
        SvgWriter svg(width, panel + 110.0);
        double x0 = gap;
        for (const auto &[y, pts] : panels) {
            svg.text(x0 + panel / 2, 24, "y = " + fmt::format("{:.4g}", y));
            draw_cells(svg, pts, x0, 36, x0 + panel, 36 + panel, "p", "q");
            x0 += panel + gap;
        }
        svg.save(path);
        return;
    }
    std::map<std::pair<double, double>, Series> groups;
    for (const auto &r : grid) {
        groups[{r.p, r.q}].points.emplace_back(r.y, quantity == PlotQuantity::Ratio ? r.ratio : r.norm_g);
    }
    std::vector<Series> series;
    for (auto &[pq, s] : groups) {
        std::sort(s.points.begin(), s.points.end());
        s.label = fmt::format("p = {:.3g}, q = {:.3g}", pq.first, pq.second);
        series.push_back(std::move(s));
    }
    draw_curves(series, quantity == PlotQuantity::Ratio ? "norm ratio" : "norm", path, quantity == PlotQuantity::Norm);
}

}  // namespace belltensor

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

#include <filesystem>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace belltensor {

/// Threshold above which a normalized game value counts as a violation.
inline constexpr double kViolationSlack = 1e-12;

/// One point of the deformed-CHSH sweep for A = (σ_X, yσ_Y).
struct DeformedChshRecord {
    double y = 0.0;
    double t = 0.0;
    double norm_m = 0.0;
    double norm_c = 0.0;
    double ratio = 0.0;
    bool violated = false;
    bool invertible = true;
};

/// One point of the biased-CHSH sweep G(p, q) for A = (σ_X, yσ_Y).
struct BiasedChshRecord {
    double y = 0.0;
    double p = 0.0;
    double q = 0.0;
    double norm_g = 0.0;
    double norm_c = 0.0;
    double ratio = 0.0;
    bool violated = false;
    bool invertible = true;
};

using DeformedGrid = std::vector<DeformedChshRecord>;
using BiasedGrid = std::vector<BiasedChshRecord>;

/// y-major ordering: index = iy * |t_grid| + it.
DeformedGrid scan_deformed_chsh(std::span<const double> y_grid, std::span<const double> t_grid);

/// Ordering: index = (iy * |p_grid| + ip) * |q_grid| + iq.
BiasedGrid scan_biased_chsh(std::span<const double> y_grid, std::span<const double> p_grid,
                            std::span<const double> q_grid);

/// (√(1+(yt)²) + √(1+y²)) / (2 + |t−1|).
double deformed_chsh_closed_form(double y, double t);

/// Closed-form ‖(σ_X, yσ_Y)‖ for the normalized biased game.
double biased_chsh_closed_form(double y, double p, double q);

/// Inclusive arithmetic grid a, a+step, ..., b (the endpoint is snapped).
std::vector<double> arithmetic_grid(double a, double b, double step);

/// Parses "a:b:step" or a comma-separated list of values.
std::vector<double> parse_grid(std::string_view text);

enum class PlotKind { Region, Curves };
enum class PlotQuantity { Norm, Ratio };

PlotKind parse_plot_kind(std::string_view s);
PlotQuantity parse_plot_quantity(std::string_view s);

void emit_csv(const DeformedGrid &grid, const std::filesystem::path &path);
void emit_csv(const BiasedGrid &grid, const std::filesystem::path &path);

/// Region: filled cells where violated. Deformed grids use y horizontally
/// and t vertically; biased grids draw one (p, q) panel per y value.
/// Curves: quantity against y, one polyline per t or per (p, q).
void emit_svg(const DeformedGrid &grid, const std::filesystem::path &path, PlotKind kind,
              PlotQuantity quantity = PlotQuantity::Norm);
void emit_svg(const BiasedGrid &grid, const std::filesystem::path &path, PlotKind kind,
              PlotQuantity quantity = PlotQuantity::Norm);

}  // namespace belltensor

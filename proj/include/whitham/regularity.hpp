/*
 * Copyright 2026, The whitham-waves authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whitham/errors.hpp"
#include "whitham/spectral_operator.hpp"

namespace whitham {

/// The requested fit window holds too few resolved samples.
class ResolutionError : public DomainError {
public:
    using DomainError::DomainError;
};

struct FitWindow {
    double x_lo = 0.0;
    double x_hi = 0.0;
};

/// (4 P / N, P / 16): skips the innermost grid cells and the smooth outer profile.
FitWindow default_fit_window(const CosineGrid& grid);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Least squares y = slope x + intercept. Needs >= 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct CuspFit {
    double alpha_pointwise = 0.0;
    double C_pointwise = 0.0;
    double alpha_spectral = 0.0;
    double r2_pointwise = 0.0;
    double r2_spectral = 0.0;
    FitWindow window;
    int k_lo = 0;
    int k_hi = 0;
    std::size_t points_pointwise = 0;
    std::size_t points_spectral = 0;
    double gap = 0.0;   ///< mu/2 - max phi of the analyzed wave
    std::string warning;  ///< set when gap > kNearHighestGap
};

inline constexpr double kNearHighestGap = 0.05;

/// Slope of log(phi(0) - phi(x)) against log x over the window, and of
/// log|a_k| against log k over [8, N/8]. Throws ResolutionError when fewer
/// than 8 nodes fall in either window or N leaves the default window empty,
/// DomainError for a malformed window.
CuspFit fit_cusp(const PeriodicWave& wave, std::optional<FitWindow> window = std::nullopt);

struct LowerBoundEntry {
    double x0 = 0.0;
    double bound = 0.0;    ///< x0^2 |K_P'(2 x0)| / 4
    double min_gap = 0.0;  ///< min of mu/2 - phi(x) over grid x <= x0
    double slack = 0.0;    ///< min_gap - bound
    bool ok = false;
};

/// mu/2 - phi(x) >= x0^2 |K_P'(2 x0)| / 4 for grid x in [-P/2, x0]. Each x0
/// must lie in (-P/2, 0).
std::vector<LowerBoundEntry> lower_bound_check(const PeriodicWave& wave, std::span<const double> x0_list);

}  // namespace whitham

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

#include "whitham/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "whitham/periodic_kernel.hpp"

namespace whitham {

FitWindow default_fit_window(const CosineGrid& grid) {
    const double P = grid.period();
    return FitWindow{4.0 * P / grid.modes(), P / 16.0};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need >= 2 paired points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_line: abscissae are all equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.points = x.size();
    return f;
}

CuspFit fit_cusp(const PeriodicWave& wave, std::optional<FitWindow> window) {
    const auto& grid = wave.grid;
    const double P = grid.period();
    const int N = grid.modes();
    CuspFit fit;
    fit.window = window.value_or(default_fit_window(grid));
    if (!window && !(fit.window.x_lo < fit.window.x_hi))
        throw ResolutionError("fit_cusp: N = " + std::to_string(N) + " is too coarse for the default window");
    if (!(fit.window.x_lo > 0.0 && fit.window.x_lo < fit.window.x_hi && fit.window.x_hi <= 0.25 * P))
        throw DomainError("fit_cusp: window must satisfy 0 < x_lo < x_hi <= P/4");

    const auto& x = grid.nodes();
    const auto& v = wave.values.data;
    std::vector<double> lx, ly;
    for (std::size_t j = 1; j < x.size(); ++j) {
        if (x[j] < fit.window.x_lo || x[j] > fit.window.x_hi) continue;
        const double drop = v[0] - v[j];
        if (!(drop > 0.0)) throw NumericError("fit_cusp: profile does not decrease away from the crest");
        lx.push_back(std::log(x[j]));
        ly.push_back(std::log(drop));
    }
    if (lx.size() < 8)
        throw ResolutionError("fit_cusp: only " + std::to_string(lx.size()) + " nodes in the pointwise window");
    const auto pw = fit_line(lx, ly);
    fit.alpha_pointwise = pw.slope;
    fit.C_pointwise = std::exp(pw.intercept);
    fit.r2_pointwise = pw.r_squared;
    fit.points_pointwise = pw.points;

    fit.k_lo = 8;
    fit.k_hi = N / 8;
    std::vector<double> kx, ky;
    for (int k = fit.k_lo; k <= fit.k_hi; ++k) {
        const double a = std::fabs(wave.coeffs.data[static_cast<std::size_t>(k)]);
        if (a == 0.0) continue;
        kx.push_back(std::log(static_cast<double>(k)));
        ky.push_back(std::log(a));
    }
    if (kx.size() < 8)
        throw ResolutionError("fit_cusp: only " + std::to_string(kx.size()) + " usable modes in [8, N/8]");
    const auto sp = fit_line(kx, ky);
    fit.alpha_spectral = sp.slope;
    fit.r2_spectral = sp.r_squared;
    fit.points_spectral = sp.points;

    fit.gap = 0.5 * wave.mu - wave.max_value();
    if (fit.gap > kNearHighestGap) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "not near the highest wave: gap %.3g > %.3g", fit.gap, kNearHighestGap);
        fit.warning = buf;
    }
    return fit;
}

std::vector<LowerBoundEntry> lower_bound_check(const PeriodicWave& wave, std::span<const double> x0_list) {
    const double P = wave.grid.period();
    const auto& x = wave.grid.nodes();
    const auto& v = wave.values.data;
    std::vector<LowerBoundEntry> out;
    for (double x0 : x0_list) {
        if (!(x0 < 0.0 && x0 > -0.5 * P)) throw DomainError("lower_bound_check: x0 must lie in (-P/2, 0)");
        LowerBoundEntry e;
        e.x0 = x0;
        e.bound = 0.25 * x0 * x0 * std::fabs(pkernel_derivative(2.0 * x0, P, 1, 1e-12));
        // x <= x0 on (-P/2, 0) is |x| >= |x0| on the half-period grid.
        e.min_gap = HUGE_VAL;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] >= -x0) e.min_gap = std::min(e.min_gap, 0.5 * wave.mu - v[j]);
        e.slack = e.min_gap - e.bound;
        e.ok = e.slack > 0.0;
        out.push_back(e);
    }
    return out;
}

}  // namespace whitham

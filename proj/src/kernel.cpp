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

#include "whitham/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "whitham/band_quadrature.hpp"
#include "whitham/errors.hpp"
#include "whitham/quadrature.hpp"
#include "whitham/symbol.hpp"

namespace whitham {

using std::numbers::pi;

std::string_view to_string(KernelMethod m) {
    switch (m) {
        case KernelMethod::series: return "series";
        case KernelMethod::split: return "split";
        case KernelMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

namespace {

void check_order(int order) {
    if (order < 0 || order > 2) throw DomainError("kernel: derivative order must be 0, 1 or 2");
}

void check_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("kernel: tolerance must be positive");
}

/// sqrt(tanh z) - 1 without cancellation for large z.
double sqrt_tanh_minus_one(double z) {
    const double e = std::exp(-2.0 * z);
    const double one_minus_tanh = 2.0 * e / (1.0 + e);
    return -one_minus_tanh / (1.0 + std::sqrt(std::tanh(z)));
}

double trig_factor(int order, double z) {
    switch (order) {
        case 0: return std::cos(z);
        case 1: return -std::sin(z);
        default: return -std::cos(z);
    }
}

}  // namespace

KernelValue kernel_series_derivative(double x, int order, double tol) {
    check_order(order);
    check_tol(tol);
    const double ax = std::fabs(x);
    if (!std::isfinite(x)) throw DomainError("kernel_series: non-finite x");
    if (ax < kSeriesMinX)
        throw RangeError("kernel_series: |x| = " + std::to_string(ax) +
                         " is below the series threshold; use kernel_split");

    // K^{(r)}(x) = (-sgn x)^r / pi * sum_n int_band exp(-s|x|) s^r sqrt(|tan s| / s) ds
    const auto sum = laplace_band_sum(BandWeight::exponential(ax), order, tol * pi);
    const double sign = (order % 2 == 1 && x > 0.0) ? -1.0 : 1.0;
    return KernelValue{x, sign * sum.value / pi, KernelMethod::series, sum.err_est / pi};
}

KernelValue kernel_series(double x, double tol) { return kernel_series_derivative(x, 0, tol); }

double kernel_regular_part(double x, int order, double tol, double* err_est) {
    check_order(order);
    check_tol(tol);
    const double ax = std::fabs(x);
    const auto& lo = gauss_legendre(32);
    const auto& hi = gauss_legendre(64);

    // (1/pi) int_0^inf (m(xi) - xi^{-1/2}) xi^r trig_r(x xi) d xi, with trig
    // the r-th derivative of cos(x xi) divided by xi^r.
    // [0, 1]: xi = v^2 turns the integrand into 2 (sqrt(tanh v^2) - 1) v^{2r} trig(x v^2).
    auto inner = [&](double v) {
        const double v2 = v * v;
        return 2.0 * sqrt_tanh_minus_one(v2) * std::pow(v2, order) * trig_factor(order, ax * v2);
    };
    auto outer = [&](double xi) {
        return sqrt_tanh_minus_one(xi) / std::sqrt(xi) * std::pow(xi, order) * trig_factor(order, ax * xi);
    };

    double value = 0.0, err = 0.0;
    const int inner_panels = std::max(1, static_cast<int>(std::ceil(ax / 4.0)));
    for (int p = 0; p < inner_panels; ++p) {
        const double a = static_cast<double>(p) / inner_panels;
        const double b = static_cast<double>(p + 1) / inner_panels;
        const double i64 = integrate_gl(hi, a, b, inner);
        const double i32 = integrate_gl(lo, a, b, inner);
        value += i64;
        err += std::fabs(i64 - i32);
    }

    // Beyond 1 the integrand is bounded by 2 exp(-2 xi) xi^{r - 1/2}.
    double cutoff = 1.0;
    while (std::exp(-2.0 * cutoff) * std::pow(cutoff, order) / pi >= tol / 10.0) cutoff += 1.0;
    const double width = ax > 4.0 ? 4.0 / ax : 1.0;
    const int panels = static_cast<int>(std::ceil((cutoff - 1.0) / width));
    for (int p = 0; p < panels; ++p) {
        const double a = 1.0 + (cutoff - 1.0) * p / panels;
        const double b = 1.0 + (cutoff - 1.0) * (p + 1) / panels;
        const double i64 = integrate_gl(hi, a, b, outer);
        const double i32 = integrate_gl(lo, a, b, outer);
        value += i64;
        err += std::fabs(i64 - i32);
    }
    err += std::exp(-2.0 * cutoff) * std::pow(cutoff, order);

    if (order == 1 && x < 0.0) value = -value;  // odd derivative of an even function
    if (err_est) *err_est = err / pi;
    return value / pi;
}

SingularSplit kernel_split_derivative(double x, int order, double tol) {
    check_order(order);
    check_tol(tol);
    if (!std::isfinite(x)) throw DomainError("kernel_split: non-finite x");
    if (x == 0.0) throw DomainError("kernel_split: x = 0 is the singular point of K");
    const double ax = std::fabs(x);
    const double base = 1.0 / std::sqrt(2.0 * pi * ax);
    SingularSplit out;
    switch (order) {
        case 0: out.singular_part = base; break;
        case 1: out.singular_part = (x > 0.0 ? -0.5 : 0.5) * base / ax; break;
        default: out.singular_part = 0.75 * base / (ax * ax); break;
    }
    out.regular_part = kernel_regular_part(x, order, tol, &out.err_est);
    return out;
}

SingularSplit kernel_split(double x, double tol) { return kernel_split_derivative(x, 0, tol); }

KernelValue kernel_asymptotic(double x) {
    const double ax = std::fabs(x);
    if (!(ax >= kAsymptoticMinX))
        throw RangeError("kernel_asymptotic: requires |x| >= 5");
    const double value = std::numbers::sqrt2 / (pi * std::sqrt(ax)) * std::exp(-0.5 * pi * ax);
    return KernelValue{x, value, KernelMethod::asymptotic, value / ax};
}

KernelValue kernel_value(double x, double tol) {
    if (x == 0.0) throw DomainError("kernel_value: x = 0 is the singular point of K");
    if (std::fabs(x) >= kSeriesMinX) return kernel_series(x, tol);
    const auto split = kernel_split(x, tol);
    return KernelValue{x, split.total(), KernelMethod::split, split.err_est};
}

double kernel_derivative(double x, int order, double tol) {
    if (order != 1 && order != 2) throw DomainError("kernel_derivative: order must be 1 or 2");
    if (x == 0.0) throw DomainError("kernel_derivative: x = 0 is the singular point of K");
    if (std::fabs(x) >= kSeriesMinX) return kernel_series_derivative(x, order, tol).value;
    return kernel_split_derivative(x, order, tol).total();
}

bool CompleteMonotonicityReport::alternating() const {
    return std::all_of(orders.begin(), orders.end(),
                       [](const DividedDifferenceOrder& o) { return o.violations == 0 && o.windows > 0; });
}

CompleteMonotonicityReport divided_difference_signs(std::span<const double> grid,
                                                    std::span<const double> values, int max_order) {
    if (grid.size() != values.size()) throw DomainError("divided differences: size mismatch");
    if (max_order < 0 || grid.size() < static_cast<std::size_t>(max_order) + 1)
        throw DomainError("divided differences: grid too short for the requested order");
    CompleteMonotonicityReport report;
    std::vector<double> dd(values.begin(), values.end());
    for (int n = 0; n <= max_order; ++n) {
        if (n > 0) {
            for (std::size_t i = 0; i + static_cast<std::size_t>(n) < grid.size(); ++i)
                dd[i] = (dd[i + 1] - dd[i]) / (grid[i + static_cast<std::size_t>(n)] - grid[i]);
            dd.pop_back();
        }
        DividedDifferenceOrder o;
        o.order = n;
        o.windows = dd.size();
        o.min_margin = HUGE_VAL;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (double d : dd) {
            const double margin = sign * d;
            if (!(margin > 0.0)) ++o.violations;
            o.min_margin = std::min(o.min_margin, margin);
        }
        report.orders.push_back(o);
    }
    return report;
}

CompleteMonotonicityReport check_complete_monotone(std::span<const double> grid, int max_order, double tol,
                                                   Exec exec) {
    if (max_order < 0 || max_order > 4) throw DomainError("check_complete_monotone: max_order must be in [0, 4]");
    if (grid.size() < static_cast<std::size_t>(max_order) + 1)
        throw DomainError("check_complete_monotone: grid too short");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
            throw DomainError("check_complete_monotone: grid must lie in (0, inf)");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("check_complete_monotone: grid must be strictly increasing");
    }
    std::vector<double> values(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t i) { values[i] = kernel_value(grid[i], tol).value; });
    return divided_difference_signs(grid, values, max_order);
}

double asymptotic_tail_integral(double cutoff) {
    // int_X^inf x^{-1/2} e^{-c x} dx = sqrt(pi / c) erfc(sqrt(c X)), c = pi / 2.
    return 2.0 / pi * std::erfc(std::sqrt(0.5 * pi * cutoff));
}

KernelMassParts kernel_mass_parts(double tol, int refine, Exec exec) {
    check_tol(tol);
    if (refine < 1) throw DomainError("kernel_mass: refine must be >= 1");
    KernelMassParts parts;
    const double eval_tol = tol * 1e-3;
    const auto& rule = gauss_legendre(20);

    // Panels for [x_min, X]: geometric up to 1.6, then unit-ish width.
    std::vector<double> edges{kSeriesMinX};
    while (edges.back() < 1.6 - 1e-12) edges.push_back(2.0 * edges.back());
    const int uniform = 39;
    const double start = edges.back();
    for (int i = 1; i <= uniform; ++i) edges.push_back(start + (parts.cutoff - start) * i / uniform);

    std::vector<double> fine{edges.front()};
    for (std::size_t e = 1; e < edges.size(); ++e)
        for (int r = 1; r <= refine; ++r)
            fine.push_back(edges[e - 1] + (edges[e] - edges[e - 1]) * r / refine);

    const std::size_t q = rule.nodes.size();
    const std::size_t panels = fine.size() - 1;
    std::vector<double> samples(panels * q);
    for_each_index(samples.size(), exec, [&](std::size_t idx) {
        const std::size_t p = idx / q, i = idx % q;
        const double a = fine[p], b = fine[p + 1];
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
        samples[idx] = kernel_series(x, eval_tol).value;
    });
    for (std::size_t p = 0; p < panels; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < q; ++i) s += rule.weights[i] * samples[p * q + i];
        parts.series += 0.5 * (fine[p + 1] - fine[p]) * s;
    }

    // int_0^{x_min} (2 pi x)^{-1/2} dx = sqrt(2 x_min / pi); K_reg is analytic.
    double reg = 0.0;
    for (int r = 0; r < refine; ++r) {
        const double a = kSeriesMinX * r / refine, b = kSeriesMinX * (r + 1) / refine;
        reg += integrate_gl(rule, a, b, [&](double x) { return kernel_regular_part(x, 0, eval_tol); });
    }
    parts.near_zero = std::sqrt(2.0 * kSeriesMinX / pi) + reg;
    parts.tail = asymptotic_tail_integral(parts.cutoff);
    return parts;
}

double kernel_mass(double tol, int refine, Exec exec) { return kernel_mass_parts(tol, refine, exec).total(); }

std::vector<KernelRow> kernel_table(std::span<const double> xs, double tol, Exec exec) {
    std::vector<KernelRow> rows(xs.size());
    for_each_index(xs.size(), exec, [&](std::size_t i) {
        const double x = xs[i];
        const auto v = kernel_value(x, tol);
        rows[i] = KernelRow{x, v.value, kernel_derivative(x, 1, tol), kernel_derivative(x, 2, tol), v.method,
                            v.err_est};
    });
    return rows;
}

std::vector<KernelRow> kernel_table(std::span<const double> xs, double tol, KernelMethod forced, Exec exec) {
    std::vector<KernelRow> rows(xs.size());
    for_each_index(xs.size(), exec, [&](std::size_t i) {
        const double x = xs[i];
        KernelValue v;
        switch (forced) {
            case KernelMethod::series: v = kernel_series(x, tol); break;
            case KernelMethod::asymptotic: v = kernel_asymptotic(x); break;
            case KernelMethod::split: {
                const auto s = kernel_split(x, tol);
                v = KernelValue{x, s.total(), KernelMethod::split, s.err_est};
                break;
            }
        }
        rows[i] = KernelRow{x, v.value, kernel_derivative(x, 1, tol), kernel_derivative(x, 2, tol), v.method,
                            v.err_est};
    });
    return rows;
}

}  // namespace whitham

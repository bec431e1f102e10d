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

#include <span>
#include <string_view>
#include <vector>

#include "whitham/exec.hpp"

namespace whitham {

/// Crossover between the band series (|x| >= kSeriesMinX) and the
/// singular/regular split (|x| < kSeriesMinX).
inline constexpr double kSeriesMinX = 0.05;

/// Smallest |x| accepted by kernel_asymptotic.
inline constexpr double kAsymptoticMinX = 5.0;

enum class KernelMethod { series, split, asymptotic };

std::string_view to_string(KernelMethod m);

/// One evaluation of K (or of a derivative of K).
struct KernelValue {
    double x = 0.0;
    double value = 0.0;
    KernelMethod method = KernelMethod::series;
    /// Absolute error estimate: difference of two quadrature orders plus the
    /// truncation envelope. Not a rigorous bound.
    double err_est = 0.0;
};

/// K(x) = (2 pi |x|)^{-1/2} + K_reg(x).
struct SingularSplit {
    double singular_part = 0.0;
    double regular_part = 0.0;
    double err_est = 0.0;  ///< estimate for regular_part; singular_part is exact

    double total() const { return singular_part + regular_part; }
};

/// Band series for K. Each band ((2n-1)pi/2, n pi) is integrated with 32 and
/// 64 point Gauss-Legendre after s = (2n-1)pi/2 + u^2, u = sqrt(pi/2) sin(theta),
/// which makes the integrand analytic on the closed band. Bands are added
/// until the envelope of the remaining ones drops below tol/10.
/// Throws RangeError for |x| < kSeriesMinX, DomainError for tol <= 0.
KernelValue kernel_series(double x, double tol);

/// order-th derivative (order 0, 1 or 2) of the band series.
KernelValue kernel_series_derivative(double x, int order, double tol);

/// Closed-form singular part plus quadrature of the regular part. x != 0.
SingularSplit kernel_split(double x, double tol);

/// Derivative of order 0, 1 or 2 of both parts of the split. x != 0.
SingularSplit kernel_split_derivative(double x, int order, double tol);

/// K_reg^{(order)}(x) by quadrature; finite at x = 0.
double kernel_regular_part(double x, int order, double tol, double* err_est = nullptr);

/// Leading exponential asymptotics sqrt(2)/(pi sqrt|x|) exp(-pi |x| / 2).
/// err_est = value / |x|. Throws RangeError for |x| < kAsymptoticMinX.
KernelValue kernel_asymptotic(double x);

/// K(x) by whichever of series/split is appropriate for |x|. x != 0.
KernelValue kernel_value(double x, double tol);

/// K'(x) (order 1) or K''(x) (order 2). Series route for |x| >= kSeriesMinX,
/// split route below. Throws DomainError for x = 0 or order not in {1, 2}.
double kernel_derivative(double x, int order, double tol);

/// Sign pattern of the divided differences of one order.
struct DividedDifferenceOrder {
    int order = 0;
    std::size_t windows = 0;
    std::size_t violations = 0;  ///< windows where (-1)^order * dd <= 0
    double min_margin = 0.0;     ///< min over windows of (-1)^order * dd
};

struct CompleteMonotonicityReport {
    std::vector<DividedDifferenceOrder> orders;  ///< orders 0..max_order
    bool alternating() const;
};

/// Divided differences of order 0..max_order of `values` on `grid`.
/// Shared with the periodic-kernel report.
CompleteMonotonicityReport divided_difference_signs(std::span<const double> grid,
                                                    std::span<const double> values,
                                                    int max_order);

/// Checks (-1)^n [x_i..x_{i+n}]K > 0 for n <= max_order on every window.
/// grid must be strictly increasing in (0, inf) with >= max_order + 1 points,
/// max_order in [0, 4]; otherwise DomainError.
CompleteMonotonicityReport check_complete_monotone(std::span<const double> grid, int max_order,
                                                   double tol = 1e-13, Exec exec = Exec::parallel);

/// Pieces of the integral of K over the real line (each piece is a half-line
/// contribution, the total doubles their sum).
struct KernelMassParts {
    double near_zero = 0.0;  ///< int_0^{x_min} K: closed-form singular part + quadrature of K_reg
    double series = 0.0;     ///< int_{x_min}^{X} K by panels of the band series
    double tail = 0.0;       ///< int_X^inf of the asymptotic envelope, closed form
    double cutoff = 40.0;    ///< X
    double total() const { return 2.0 * (near_zero + series + tail); }
};

/// refine > 1 subdivides every quadrature panel `refine` times.
KernelMassParts kernel_mass_parts(double tol, int refine = 1, Exec exec = Exec::parallel);

/// Integral of K over R; equals m(0) = 1. Throws DomainError for tol <= 0.
double kernel_mass(double tol, int refine = 1, Exec exec = Exec::parallel);

/// Closed-form integral over [X, inf) of sqrt(2)/(pi sqrt x) exp(-pi x / 2).
double asymptotic_tail_integral(double cutoff);

struct KernelRow {
    double x = 0.0;
    double value = 0.0;
    double first = 0.0;
    double second = 0.0;
    KernelMethod method = KernelMethod::series;
    double err_est = 0.0;
};

/// K, K', K'' at each abscissa (none may be zero). `forced` selects a route
/// for the value column; by default the value route follows kernel_value.
std::vector<KernelRow> kernel_table(std::span<const double> xs, double tol, Exec exec = Exec::parallel);
std::vector<KernelRow> kernel_table(std::span<const double> xs, double tol, KernelMethod forced,
                                    Exec exec = Exec::parallel);

}  // namespace whitham

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
#include "whitham/kernel.hpp"

namespace whitham {

enum class PKernelMethod { direct_sum, cosh_formula, fourier_modes };

std::string_view to_string(PKernelMethod m);

struct PeriodicKernelValue {
    double x = 0.0;
    double P = 0.0;
    double value = 0.0;
    PKernelMethod method = PKernelMethod::direct_sum;
    double err_est = 0.0;
};

/// Nearest-image reduction x - P round(x/P), in [-P/2, P/2].
double reduce_periodic(double x, double P);

/// sum_n K(x + nP), terms added smallest first. Throws DomainError for
/// x in PZ, P <= 0 or tol <= 0.
PeriodicKernelValue pkernel_direct(double x, double P, double tol);

/// Band series with weight cosh(s y)/sinh(sP/2), y the coordinate reduced
/// about P/2. Independent of the line kernel; used as the oracle.
PeriodicKernelValue pkernel_cosh(double x, double P, double tol);

/// K_P' (order 1) or K_P'' (order 2) by the direct sum.
double pkernel_derivative(double x, double P, int order, double tol);

struct FourierCheckReport {
    double P = 0.0;
    int n_grid = 0;
    int n_modes = 0;
    std::vector<double> computed;   ///< DFT coefficients of K_P minus the nearest-image singular part
    std::vector<double> expected;   ///< m(2 pi k/P)/P minus the singular part's coefficients
    std::vector<double> deviation;  ///< |computed - expected|
    double max_deviation = 0.0;
    double mean = 0.0;  ///< mode-0 coefficient of K_P, singular part added back analytically (1/P)
};

/// Samples K_P (cosh formula) on the midpoint grid of one period, removes
/// (2 pi dist(x, PZ))^{-1/2}, and compares the low cosine modes with the
/// multipliers. n_grid must be a power of two >= 2^12, n_modes <= 16.
FourierCheckReport pkernel_fourier_check(double P, int n_grid, int n_modes, double tol = 1e-11,
                                         Exec exec = Exec::parallel);

struct PeriodicMonotonicityReport {
    double P = 0.0;
    CompleteMonotonicityReport half_period;  ///< orders 0..3 on (0, P/2)
    DividedDifferenceOrder convexity;        ///< order 2 on (0, P)
    bool ok() const { return half_period.alternating() && convexity.violations == 0; }
};

PeriodicMonotonicityReport pkernel_monotonicity_report(double P, int points = 100, double tol = 1e-13,
                                                       Exec exec = Exec::parallel);

std::vector<PeriodicKernelValue> pkernel_table(std::span<const double> xs, double P, double tol,
                                               PKernelMethod method, Exec exec = Exec::parallel);

}  // namespace whitham

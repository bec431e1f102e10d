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

#include "whitham/periodic_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whitham/band_quadrature.hpp"
#include "whitham/errors.hpp"
#include "whitham/quadrature.hpp"
#include "whitham/symbol.hpp"

namespace whitham {

using std::numbers::pi;

std::string_view to_string(PKernelMethod m) {
    switch (m) {
        case PKernelMethod::direct_sum: return "direct_sum";
        case PKernelMethod::cosh_formula: return "cosh_formula";
        case PKernelMethod::fourier_modes: return "fourier_modes";
    }
    return "unknown";
}

namespace {

void check_args(double x, double P, double tol) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("periodic kernel: period must be positive and finite");
    if (!std::isfinite(x)) throw DomainError("periodic kernel: non-finite x");
    if (!(tol > 0.0)) throw DomainError("periodic kernel: tolerance must be positive");
}

// Upper envelope of K on z > 0 (band n bounded by its first-endpoint weight).
double kernel_envelope(double z) {
    return std::exp(-0.5 * pi * z) / (std::sqrt(pi) * -std::expm1(-pi * z));
}

// Number of images on each side so that the remainder is below tol/10.
int image_count(double P, double tol) {
    const double q = -std::expm1(-0.5 * pi * P);
    int n = 0;
    while (2.0 * kernel_envelope((n + 0.5) * P) / q >= tol / 10.0) {
        ++n;
        if (n > 1000000) throw NumericError("pkernel_direct: image sum does not converge");
    }
    return n;
}

template <class Term>
double sum_images(double y, double P, int images, Term&& term) {
    // Terms decrease away from n = 0; add from the far end for reproducible rounding.
    double sum = 0.0;
    for (int n = images; n >= 1; --n) sum += term(y + n * P) + term(y - n * P);
    return sum + term(y);
}

}  // namespace

double reduce_periodic(double x, double P) { return x - P * std::round(x / P); }

PeriodicKernelValue pkernel_direct(double x, double P, double tol) {
    check_args(x, P, tol);
    const double y = reduce_periodic(x, P);
    if (y == 0.0) throw DomainError("pkernel_direct: x is a lattice point of PZ (singular)");
    const int images = image_count(P, tol);
    const double term_tol = tol / (4.0 * (images + 1));
    double err = 0.0;
    const double value = sum_images(y, P, images, [&](double z) {
        const auto k = kernel_value(z, term_tol);
        err += k.err_est;
        return k.value;
    });
    const double tail = 2.0 * kernel_envelope((images + 0.5) * P) / -std::expm1(-0.5 * pi * P);
    return PeriodicKernelValue{x, P, value, PKernelMethod::direct_sum, err + tail};
}

PeriodicKernelValue pkernel_cosh(double x, double P, double tol) {
    check_args(x, P, tol);
    // y = x - P/2 - P floor(x/P) in [-P/2, P/2); d = P/2 - |y| is the distance to PZ.
    const double y = x - 0.5 * P - P * std::floor(x / P);
    const double d = 0.5 * P - std::fabs(y);
    if (!(d > 0.0)) throw DomainError("pkernel_cosh: x is a lattice point of PZ (singular)");
    const auto sum = laplace_band_sum(BandWeight::periodic(d, P), 0, tol * pi);
    return PeriodicKernelValue{x, P, sum.value / pi, PKernelMethod::cosh_formula, sum.err_est / pi};
}

double pkernel_derivative(double x, double P, int order, double tol) {
    check_args(x, P, tol);
    if (order != 1 && order != 2) throw DomainError("pkernel_derivative: order must be 1 or 2");
    const double y = reduce_periodic(x, P);
    if (y == 0.0) throw DomainError("pkernel_derivative: x is a lattice point of PZ (singular)");
    // |K^{(r)}(z)| <= (pi/2 + pi)^r-ish times the value envelope; pad the count.
    const int images = image_count(P, tol * 1e-2) + 1;
    const double term_tol = tol / (4.0 * (images + 1));
    return sum_images(y, P, images, [&](double z) { return kernel_derivative(z, order, term_tol); });
}

FourierCheckReport pkernel_fourier_check(double P, int n_grid, int n_modes, double tol, Exec exec) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("pkernel_fourier_check: period must be positive");
    if (n_grid < 1 || (n_grid & (n_grid - 1)) != 0)
        throw DomainError("pkernel_fourier_check: grid size must be a power of two");
    if (n_grid < (1 << 12)) throw DomainError("pkernel_fourier_check: grid size must be at least 2^12");
    if (n_modes < 0 || n_modes > 16) throw DomainError("pkernel_fourier_check: n_modes must be in [0, 16]");

    FourierCheckReport rep;
    rep.P = P;
    rep.n_grid = n_grid;
    rep.n_modes = n_modes;

    // Midpoint grid: no sample lands on the singularity. By evenness only the
    // first half is evaluated.
    const auto n = static_cast<std::size_t>(n_grid);
    const double h = P / n_grid;
    std::vector<double> f(n / 2);
    for_each_index(n / 2, exec, [&](std::size_t j) {
        const double x = (static_cast<double>(j) + 0.5) * h;
        f[j] = pkernel_cosh(x, P, tol).value - 1.0 / std::sqrt(2.0 * pi * x);
    });

    // Singular part coefficients: (2/P) int_0^{P/2} (2 pi x)^{-1/2} cos(2 pi k x/P) dx with x = v^2.
    const auto& rule = gauss_legendre(32);
    const double vmax = std::sqrt(0.5 * P);
    const double c0 = 2.0 / std::sqrt(2.0 * pi);
    for (int k = 0; k <= n_modes; ++k) {
        const int panels = 4 + 2 * k;
        double sk = 0.0;
        for (int p = 0; p < panels; ++p)
            sk += integrate_gl(rule, vmax * p / panels, vmax * (p + 1) / panels,
                               [&](double v) { return c0 * std::cos(2.0 * pi * k * v * v / P); });
        sk *= 2.0 / P;

        double ck = 0.0;
        for (std::size_t j = 0; j < n / 2; ++j)
            ck += f[j] * std::cos(2.0 * pi * k * (static_cast<double>(j) + 0.5) / n_grid);
        ck *= 2.0 / n_grid;
        if (k == 0) rep.mean = ck + sk;

        const double expected = eval_symbol(2.0 * pi * k / P) / P - sk;
        rep.computed.push_back(ck);
        rep.expected.push_back(expected);
        rep.deviation.push_back(std::fabs(ck - expected));
        rep.max_deviation = std::max(rep.max_deviation, rep.deviation.back());
    }
    return rep;
}

PeriodicMonotonicityReport pkernel_monotonicity_report(double P, int points, double tol, Exec exec) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("pkernel_monotonicity_report: period must be positive");
    if (points < 8) throw DomainError("pkernel_monotonicity_report: need at least 8 points");
    PeriodicMonotonicityReport rep;
    rep.P = P;

    const auto n = static_cast<std::size_t>(points);
    std::vector<double> half(n), hv(n);
    for (std::size_t i = 0; i < n; ++i) half[i] = 0.5 * P * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    for_each_index(n, exec, [&](std::size_t i) { hv[i] = pkernel_direct(half[i], P, tol).value; });
    rep.half_period = divided_difference_signs(half, hv, 3);

    // Full period; an odd node count keeps P/2 off the grid.
    const std::size_t m = 2 * n;
    std::vector<double> full(m), fv(m);
    for (std::size_t i = 0; i < m; ++i) full[i] = P * static_cast<double>(i + 1) / static_cast<double>(m + 1);
    for_each_index(m, exec, [&](std::size_t i) { fv[i] = pkernel_direct(full[i], P, tol).value; });
    rep.convexity = divided_difference_signs(full, fv, 2).orders[2];
    return rep;
}

std::vector<PeriodicKernelValue> pkernel_table(std::span<const double> xs, double P, double tol,
                                               PKernelMethod method, Exec exec) {
    if (method == PKernelMethod::fourier_modes)
        throw DomainError("pkernel_table: the Fourier series is not summed pointwise");
    std::vector<PeriodicKernelValue> rows(xs.size());
    for_each_index(xs.size(), exec, [&](std::size_t i) {
        rows[i] = method == PKernelMethod::direct_sum ? pkernel_direct(xs[i], P, tol) : pkernel_cosh(xs[i], P, tol);
    });
    return rows;
}

}  // namespace whitham

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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "whitham/errors.hpp"
#include "whitham/kernel.hpp"
#include "whitham/symbol.hpp"

using namespace whitham;
using std::numbers::pi;

namespace {

// K_reg by composite Simpson in v = sqrt(xi) on [0, sqrt(40)]; shares no code
// with the library quadrature beyond eval_symbol.
double k_reg_simpson(double x, int intervals = 200000) {
    const double vmax = std::sqrt(40.0);
    const double h = vmax / intervals;
    auto f = [&](double v) { return 2.0 * (v * eval_symbol(v * v) - 1.0) * std::cos(x * v * v); };
    double s = f(0.0) + f(vmax);
    for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0 / pi;
}

double asymptotic_ratio(double x) {
    return kernel_series(x, 1e-14).value * pi * std::exp(0.5 * pi * x) * std::sqrt(x) / std::numbers::sqrt2;
}

}  // namespace

TEST_CASE("kernel: positivity and evenness") {
    const auto a = kernel_series(1.0, 1e-12), b = kernel_series(-1.0, 1e-12);
    CHECK(a.value > 0.0);
    CHECK(a.value == b.value);
    CHECK(a.method == KernelMethod::series);
    CHECK(a.err_est <= 1e-12);
    CHECK(kernel_value(0.01, 1e-12).value == kernel_value(-0.01, 1e-12).value);
    CHECK(kernel_value(0.01, 1e-12).method == KernelMethod::split);
}

TEST_CASE("kernel: series and split agree on 50 log-spaced points") {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = 0.1 * std::pow(50.0, i / 49.0);
        worst = std::max(worst, std::fabs(kernel_series(x, 1e-12).value - kernel_split(x, 1e-12).total()));
    }
    CHECK(worst < 1e-8);
    // The overlap interval of the two routes.
    for (double x : {0.05, 0.1, 0.25, 0.5})
        CHECK(std::fabs(kernel_series(x, 1e-12).value - kernel_split(x, 1e-12).total()) < 1e-10);
    CHECK(std::fabs(kernel_series(1.0, 1e-10).value - kernel_split(1.0, 1e-10).total()) < 1e-9);
}

TEST_CASE("kernel: split route") {
    CHECK(kernel_split(0.5, 1e-12).singular_part == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-15));
    CHECK_THROWS_AS(kernel_split(0.0, 1e-12), DomainError);
    CHECK_THROWS_AS(kernel_series(0.01, 1e-12), RangeError);
    CHECK_THROWS_AS(kernel_series(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_value(0.0, 1e-12), DomainError);
}

TEST_CASE("kernel: regular part bounded on [-1, 1] (brute-force oracle)") {
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -1.0 + 0.01 * i;
        worst = std::max(worst, std::fabs(kernel_regular_part(x, 0, 1e-13)));
    }
    CHECK(worst <= 2.0);
    for (double x : {0.0, 0.3, -0.7, 1.0}) CHECK(std::fabs(kernel_regular_part(x, 0, 1e-13) - k_reg_simpson(x)) < 1e-9);
}

TEST_CASE("kernel: asymptotics") {
    CHECK_THROWS_AS(kernel_asymptotic(4.9), RangeError);
    CHECK(kernel_asymptotic(-7.0).value == kernel_asymptotic(7.0).value);
    const double r20 = kernel_series(20.0, 1e-14).value / kernel_asymptotic(20.0).value;
    CHECK(r20 > 0.9);
    CHECK(r20 < 1.1);
    const double r10 = kernel_series(10.0, 1e-14).value / kernel_asymptotic(10.0).value;
    CHECK(r10 > 0.85);
    CHECK(r10 < 1.15);
    double prev = HUGE_VAL;
    for (double x : {5.0, 10.0, 15.0, 20.0}) {
        const double dev = std::fabs(asymptotic_ratio(x) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 0.1);
    // K(x) e^{pi x/2} sqrt(x) -> sqrt(2)/pi monotonically on [10, 40].
    double last = HUGE_VAL;
    for (double x = 10.0; x <= 40.0; x += 2.0) {
        const double dev = std::fabs(asymptotic_ratio(x) - 1.0);
        CHECK(dev < last);
        CHECK(dev < 1.0 / x);
        last = dev;
    }
}

TEST_CASE("kernel: singular law at the origin") {
    double prev = HUGE_VAL;
    for (double x : {1e-3, 1e-4, 1e-5}) {
        const double dev = std::fabs(kernel_value(x, 1e-13).value * std::sqrt(2.0 * pi * x) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("kernel: derivatives") {
    CHECK(kernel_derivative(1.0, 1, 1e-12) < 0.0);
    CHECK(kernel_derivative(1.0, 2, 1e-12) > 0.0);
    CHECK(kernel_derivative(-0.7, 1, 1e-12) == doctest::Approx(-kernel_derivative(0.7, 1, 1e-12)).epsilon(1e-14));
    CHECK(kernel_derivative(-0.7, 2, 1e-12) == doctest::Approx(kernel_derivative(0.7, 2, 1e-12)).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_derivative(1.0, 3, 1e-12), DomainError);
    CHECK_THROWS_AS(kernel_derivative(1.0, 0, 1e-12), DomainError);

    const double h = 1e-4;
    for (double x : {1.0, 0.2, 3.0}) {
        const double fd1 = (kernel_series(x + h, 1e-14).value - kernel_series(x - h, 1e-14).value) / (2 * h);
        CHECK(std::fabs(kernel_derivative(x, 1, 1e-12) - fd1) < 1e-6);
        const double fd2 = (kernel_derivative(x + h, 1, 1e-13) - kernel_derivative(x - h, 1, 1e-13)) / (2 * h);
        CHECK(std::fabs(kernel_derivative(x, 2, 1e-12) - fd2) < 1e-6 * std::max(1.0, std::fabs(fd2)));
    }
    // Both routes agree on the derivatives too.
    for (double x : {0.06, 0.2, 0.45}) {
        CHECK(std::fabs(kernel_series_derivative(x, 1, 1e-12).value - kernel_split_derivative(x, 1, 1e-12).total()) <
              1e-8);
        CHECK(std::fabs(kernel_series_derivative(x, 2, 1e-12).value - kernel_split_derivative(x, 2, 1e-12).total()) <
              1e-7);
    }
}

TEST_CASE("kernel: complete monotonicity by divided differences") {
    std::vector<double> grid(200);
    for (int i = 0; i < 200; ++i) grid[static_cast<std::size_t>(i)] = 0.1 * std::pow(50.0, i / 199.0);
    const auto rep = check_complete_monotone(grid, 4);
    REQUIRE(rep.orders.size() == 5);
    for (const auto& o : rep.orders) {
        CHECK(o.violations == 0);
        CHECK(o.min_margin > 0.0);
    }
    CHECK(rep.alternating());
    const std::vector<double> short_grid{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(check_complete_monotone(short_grid, 3), DomainError);
    const std::vector<double> unsorted{0.3, 0.2, 0.4, 0.5};
    CHECK_THROWS_AS(check_complete_monotone(unsorted, 1), DomainError);
}

TEST_CASE("divided differences detect a sign error") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{5, 4, 3.5, 3.6, 2};
    const auto rep = divided_difference_signs(x, y, 2);
    CHECK(rep.orders[0].violations == 0);
    CHECK(rep.orders[1].violations == 1);
    CHECK(!rep.alternating());
}

TEST_CASE("kernel: unit mass") {
    const auto parts = kernel_mass_parts(1e-8);
    CHECK(std::fabs(parts.total() - 1.0) < 1e-8);
    CHECK(parts.tail < 1e-25);
    CHECK(parts.tail == doctest::Approx(asymptotic_tail_integral(40.0)));
    const double refined = kernel_mass(1e-8, 2);
    CHECK(std::fabs(refined - parts.total()) < 1e-8);
    CHECK_THROWS_AS(kernel_mass(0.0), DomainError);
}

TEST_CASE("kernel table") {
    const std::vector<double> xs{0.01, 0.5, 6.0};
    const auto rows = kernel_table(xs, 1e-12);
    CHECK(rows[0].method == KernelMethod::split);
    CHECK(rows[1].method == KernelMethod::series);
    for (const auto& r : rows) {
        CHECK(r.value > 0.0);
        CHECK(r.first < 0.0);
        CHECK(r.second > 0.0);
    }
    const std::vector<double> far{6.0, 8.0};
    const auto asym = kernel_table(far, 1e-12, KernelMethod::asymptotic);
    CHECK(asym[0].method == KernelMethod::asymptotic);
    CHECK(asym[0].value == kernel_asymptotic(6.0).value);
}

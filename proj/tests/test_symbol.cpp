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

#include "whitham/errors.hpp"
#include "whitham/symbol.hpp"

using namespace whitham;

namespace {

// tanh x = x / (1 + x^2 / (3 + x^2 / (5 + ...))) in long double.
long double tanh_cf(long double x) {
    long double t = 0.0L;
    for (int k = 60; k >= 1; --k) t = x * x / ((2 * k + 1) + t);
    return x / (1.0L + t);
}

}  // namespace

TEST_CASE("symbol: removable singularity and evenness") {
    CHECK(eval_symbol(0.0) == 1.0);
    CHECK(eval_symbol(-1.7) == eval_symbol(1.7));
    CHECK_THROWS_AS(eval_symbol(std::nan("")), DomainError);
    CHECK_THROWS_AS(eval_symbol(HUGE_VAL), DomainError);
}

TEST_CASE("symbol: m(1) against a continued-fraction tanh") {
    const double oracle = static_cast<double>(std::sqrt(tanh_cf(1.0L)));
    CHECK(eval_symbol(1.0) == doctest::Approx(oracle).epsilon(1e-15));
    CHECK(eval_symbol(1.0) == doctest::Approx(0.87269).epsilon(1e-5));
    for (double x : {0.01, 0.3, 2.0, 4.5}) {
        const double o = static_cast<double>(std::sqrt(tanh_cf(x) / x));
        CHECK(std::fabs(eval_symbol(x) - o) <= 1e-14 * o);
    }
}

TEST_CASE("symbol: series and direct branches agree at the threshold") {
    for (double x : {0.5e-4, 1e-4, 2e-4}) {
        const double direct = std::sqrt(std::tanh(x) / x);
        CHECK(std::fabs(eval_symbol_series(x) - direct) < 1e-12);
    }
    CHECK(std::fabs(eval_symbol_series(kSymbolSeriesThreshold) - std::sqrt(std::tanh(1e-4) / 1e-4)) < 1e-12);
}

TEST_CASE("symbol: strictly decreasing and square-root tail") {
    double prev = eval_symbol(0.0);
    for (int i = 1; i <= 2000; ++i) {
        const double m = eval_symbol(0.05 * i);
        CHECK(m < prev);
        prev = m;
    }
    for (double x : {20.0, 35.0, 100.0}) CHECK(std::fabs(eval_symbol(x) * std::sqrt(x) - 1.0) < 1e-10);
}

TEST_CASE("g(lambda)") {
    CHECK(eval_g(0.0) == 1.0);
    CHECK(eval_g(1.0) == eval_symbol(1.0));
    CHECK(eval_g(4.0) == eval_symbol(2.0));
    CHECK_THROWS_AS(eval_g(-1e-3), DomainError);
}

TEST_CASE("multipliers") {
    const auto m = multipliers(2.0 * std::numbers::pi, 2);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == 1.0);
    CHECK(m[1] == eval_symbol(1.0));
    CHECK(m[2] == eval_symbol(2.0));

    const auto big = multipliers(2.0 * std::numbers::pi, 64);
    // tanh 64 = 1 to double precision, so m(64) = 64^{-1/2} = 1/8.
    CHECK(big[64] == doctest::Approx(0.125).epsilon(1e-3));
    for (std::size_t k = 1; k < big.size(); ++k) CHECK(big[k] < big[k - 1]);
    CHECK(multipliers(0.37, 3)[0] == 1.0);
    CHECK_THROWS_AS(multipliers(0.0, 4), DomainError);
    CHECK_THROWS_AS(multipliers(1.0, 0), DomainError);
}

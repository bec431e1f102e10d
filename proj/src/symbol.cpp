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

#include "whitham/symbol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "whitham/errors.hpp"

namespace whitham {

double eval_symbol_series(double xi) {
    // tanh(x)/x = 1 - x^2/3 + 2x^4/15 - 17x^6/315 + ...
    const double x2 = xi * xi;
    const double ratio = 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
    return std::sqrt(ratio);
}

double eval_symbol(double xi) {
    if (!std::isfinite(xi)) throw DomainError("eval_symbol: non-finite wavenumber");
    const double a = std::fabs(xi);
    if (a < kSymbolSeriesThreshold) return eval_symbol_series(a);
    return std::sqrt(std::tanh(a) / a);
}

double eval_g(double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("eval_g: lambda must be nonnegative");
    return eval_symbol(std::sqrt(lambda));
}

std::vector<double> multipliers(double period, int n_modes) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw DomainError("multipliers: period must be positive and finite");
    if (n_modes < 1) throw DomainError("multipliers: need at least one mode");
    std::vector<double> m(static_cast<std::size_t>(n_modes) + 1);
    const double xi = 2.0 * std::numbers::pi / period;
    for (int k = 0; k <= n_modes; ++k) m[static_cast<std::size_t>(k)] = eval_symbol(xi * k);
    return m;
}

}  // namespace whitham

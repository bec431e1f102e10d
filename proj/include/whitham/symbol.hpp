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

#include <vector>

namespace whitham {

/// Below this |xi| the symbol uses the even Maclaurin series of tanh(xi)/xi.
inline constexpr double kSymbolSeriesThreshold = 1e-4;

/// Whitham dispersion symbol m(xi) = sqrt(tanh(xi)/xi), m(0) = 1.
/// Even, strictly decreasing in |xi|, with m(xi) sqrt|xi| -> 1 at infinity.
/// Throws DomainError for non-finite xi.
double eval_symbol(double xi);

/// The series branch alone (valid for small |xi|); exposed so the crossover
/// with the direct formula can be tested.
double eval_symbol_series(double xi);

/// g(lambda) = m(sqrt(lambda)), lambda >= 0. Throws DomainError for lambda < 0.
double eval_g(double lambda);

/// [m(2 pi k / P)] for k = 0..N. Throws DomainError unless P > 0 and N >= 1.
std::vector<double> multipliers(double period, int n_modes);

}  // namespace whitham

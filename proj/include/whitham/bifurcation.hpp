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

#include <map>

#include "whitham/spectral_operator.hpp"

namespace whitham {

struct BifurcationExpansion {
    double xi = 0.0;
    double mu0 = 0.0;
    double mu2 = 0.0;
    double mu4 = 0.0;
    std::map<int, double> phi2;  ///< modes 0, 2
    std::map<int, double> phi3;  ///< mode 3
    std::map<int, double> phi4;  ///< modes 0, 2, 4
};

/// mu*_{P,k} = m(2 pi k / P). P > 0, k >= 1.
double bifurcation_point(double P, int k);

/// Fourth-order Lyapunov-Schmidt coefficients of the k = 1 branch at
/// wavenumber xi > 0, parametrized by the first cosine coefficient s.
BifurcationExpansion expansion_coeffs(double xi);

struct CriticalWavenumber {
    double xi0 = 0.0;
    double P0 = 0.0;
    double mu4 = 0.0;
};

/// Root of mu2(xi) on [0.1, 10] by bisection to 1e-12. Throws InvariantError
/// if mu2 does not change sign over the bracket.
CriticalWavenumber find_xi0();

/// phi = s cos(xi x) + s^2 phi2 + s^3 phi3 + s^4 phi4, mu = mu0 + mu2 s^2 + mu4 s^4.
/// grid.period() must equal 2 pi / xi and grid.modes() >= 4.
PeriodicWave expansion_wave(double xi, double s, const CosineGrid& grid);

/// d/ds of the expansion at s: (dphi/ds coefficients, dmu/ds).
PeriodicWave expansion_tangent(double xi, double s, const CosineGrid& grid);

}  // namespace whitham

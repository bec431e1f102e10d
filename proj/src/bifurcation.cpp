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

#include "whitham/bifurcation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "whitham/errors.hpp"
#include "whitham/symbol.hpp"

namespace whitham {

double bifurcation_point(double P, int k) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("bifurcation_point: period must be positive");
    if (k < 1) throw DomainError("bifurcation_point: k must be >= 1");
    return eval_symbol(2.0 * std::numbers::pi * k / P);
}

BifurcationExpansion expansion_coeffs(double xi) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("expansion_coeffs: xi must be positive");
    const double m0 = 1.0, m1 = eval_symbol(xi), m2 = eval_symbol(2 * xi), m3 = eval_symbol(3 * xi),
                 m4 = eval_symbol(4 * xi);
    const double A = m0 - m1, B = m2 - m1, C = m3 - m1, D = m4 - m1;

    BifurcationExpansion e;
    e.xi = xi;
    e.mu0 = m1;
    e.mu2 = 1.0 / (m1 - m0) + 1.0 / (2.0 * (m1 - m2));
    e.mu4 = 1.0 / (2.0 * A * A) * (1.0 / A + 1.0 / B) - 1.0 / (4.0 * B * B) * (1.0 / A + 3.0 / C) +
            1.0 / (4.0 * B * B * B);
    e.phi2 = {{0, -1.0 / (2.0 * A)}, {2, -1.0 / (2.0 * B)}};
    e.phi3 = {{3, 1.0 / (2.0 * B * C)}};
    e.phi4 = {{0, 1.0 / (4.0 * A * A * A) - 1.0 / (4.0 * A * A * (m1 - m2)) - 1.0 / (8.0 * A * B * B)},
              {2, -1.0 / (2.0 * B * B) * (1.0 / C - 1.0 / (2.0 * B))},
              {4, -1.0 / (2.0 * B * D) * (1.0 / C + 1.0 / (4.0 * B))}};
    return e;
}

CriticalWavenumber find_xi0() {
    double lo = 0.1, hi = 10.0;
    double flo = expansion_coeffs(lo).mu2;
    const double fhi = expansion_coeffs(hi).mu2;
    if (!(flo < 0.0 && fhi > 0.0))
        throw InvariantError("find_xi0: mu2 does not change sign on [0.1, 10]");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double f = expansion_coeffs(mid).mu2;
        if (f == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = f;
        } else {
            hi = mid;
        }
    }
    CriticalWavenumber c;
    c.xi0 = 0.5 * (lo + hi);
    c.P0 = 2.0 * std::numbers::pi / c.xi0;
    c.mu4 = expansion_coeffs(c.xi0).mu4;
    return c;
}

namespace {

void check_grid(double xi, const CosineGrid& grid) {
    if (!(xi > 0.0)) throw DomainError("expansion_wave: xi must be positive");
    const double P = 2.0 * std::numbers::pi / xi;
    if (std::fabs(grid.period() - P) > 1e-12 * P)
        throw DomainError("expansion_wave: grid period " + std::to_string(grid.period()) + " does not match 2 pi / xi");
    if (grid.modes() < 4) throw DomainError("expansion_wave: grid needs at least 4 modes");
}

}  // namespace

PeriodicWave expansion_wave(double xi, double s, const CosineGrid& grid) {
    check_grid(xi, grid);
    const auto e = expansion_coeffs(xi);
    std::vector<double> a(grid.size(), 0.0);
    a[1] = s;
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    for (const auto& [k, c] : e.phi2) a[static_cast<std::size_t>(k)] += s2 * c;
    for (const auto& [k, c] : e.phi3) a[static_cast<std::size_t>(k)] += s3 * c;
    for (const auto& [k, c] : e.phi4) a[static_cast<std::size_t>(k)] += s4 * c;
    return PeriodicWave::from_coeffs(grid, e.mu0 + e.mu2 * s2 + e.mu4 * s4, std::move(a));
}

PeriodicWave expansion_tangent(double xi, double s, const CosineGrid& grid) {
    check_grid(xi, grid);
    const auto e = expansion_coeffs(xi);
    std::vector<double> a(grid.size(), 0.0);
    a[1] = 1.0;
    for (const auto& [k, c] : e.phi2) a[static_cast<std::size_t>(k)] += 2.0 * s * c;
    for (const auto& [k, c] : e.phi3) a[static_cast<std::size_t>(k)] += 3.0 * s * s * c;
    for (const auto& [k, c] : e.phi4) a[static_cast<std::size_t>(k)] += 4.0 * s * s * s * c;
    return PeriodicWave::from_coeffs(grid, 2.0 * e.mu2 * s + 4.0 * e.mu4 * s * s * s, std::move(a));
}

}  // namespace whitham

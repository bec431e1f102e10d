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

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "whitham/exec.hpp"

namespace whitham {

/// Cosine coefficients a_0..a_N of f(x) = sum_k a_k cos(k xi x), xi = 2 pi / P.
struct CosineCoeffs {
    std::vector<double> data;
};

/// Values at the collocation nodes x_j = j P / (2N), j = 0..N.
struct NodalValues {
    std::vector<double> data;
};

/// Half-period cosine grid with FFTW DCT-I / DST-I plans. Copies share the
/// immutable plans and tables, so a grid can be used from several threads.
class CosineGrid {
public:
    /// P > 0 finite, N a power of two >= 2.
    CosineGrid(double P, int N);

    double period() const;
    int modes() const;
    std::size_t size() const { return static_cast<std::size_t>(modes()) + 1; }
    double wavenumber() const;
    const std::vector<double>& nodes() const;
    const std::vector<double>& multipliers() const;  ///< m(k xi), k = 0..N

    NodalValues to_values(const CosineCoeffs& a) const;
    CosineCoeffs to_coeffs(const NodalValues& v) const;

    /// sum_{k=1}^{N-1} b_k sin(k xi x_j) at the nodes (zero at both ends).
    NodalValues sine_values(std::span<const double> b) const;

    /// Values on the grid of twice the resolution for the same coefficients
    /// (zero padding), and the truncated coefficients of values given there.
    std::vector<double> padded_values(const CosineCoeffs& a) const;
    CosineCoeffs truncate_padded(std::span<const double> padded) const;

    /// L in value space: (L v)_i = sum_j L(i, j) v_j. Built on first use.
    const Eigen::MatrixXd& L_matrix(Exec exec = Exec::parallel) const;

    /// Row r with a_1 = r . v (trapezoidal weights included).
    const std::vector<double>& mode1_row() const;

    /// Trapezoid weights of the half-period mean: a_0 = sum_j w_j v_j.
    const std::vector<double>& mean_weights() const;

    bool same_as(const CosineGrid& other) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// How the quadratic term is discretized. `collocation` squares nodal values;
/// `dealiased` forms the product on the 2x grid and truncates to N modes.
enum class ProductRule { collocation, dealiased };

struct PeriodicWave {
    CosineGrid grid;
    double mu = 0.0;
    CosineCoeffs coeffs;
    NodalValues values;

    static PeriodicWave from_coeffs(const CosineGrid& grid, double mu, std::vector<double> coeffs);
    static PeriodicWave from_values(const CosineGrid& grid, double mu, std::vector<double> values);
    static PeriodicWave zero(const CosineGrid& grid, double mu);

    double s_param() const { return coeffs.data[1]; }
    double max_value() const;
};

CosineCoeffs apply_L(const CosineCoeffs& a, const CosineGrid& grid);
NodalValues apply_L(const NodalValues& v, const CosineGrid& grid);

/// F(phi, mu) = mu phi - L phi - phi^2 at the nodes.
NodalValues residual(const PeriodicWave& wave, ProductRule rule = ProductRule::collocation);

/// Matrix of h -> mu h - L h - 2 phi h acting on nodal values (for the
/// dealiased rule the product is the linearization of the dealiased square).
Eigen::MatrixXd jacobian(const PeriodicWave& wave, ProductRule rule = ProductRule::collocation,
                         Exec exec = Exec::parallel);

/// Spectral derivative at the nodes. Order 1 is zero at both ends (odd
/// function); order 2 is returned at every node.
NodalValues differentiate(const PeriodicWave& wave, int order);

double sup_norm(std::span<const double> v);

/// {"P", "mu", "N", "coeffs"}; doubles round-trip exactly.
std::string wave_to_json(const PeriodicWave& wave);
PeriodicWave wave_from_json(const std::string& text);

}  // namespace whitham

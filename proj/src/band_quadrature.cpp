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

#include "whitham/band_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "whitham/errors.hpp"
#include "whitham/quadrature.hpp"

namespace whitham {

using std::numbers::pi;

namespace {

// c(theta) = pi sin(theta) cos(theta) sqrt(cos t / sin t), t = (pi/2) sin^2(theta).
double band_jacobian(double theta, double& t) {
    const double s = std::sin(theta), c = std::cos(theta);
    t = 0.5 * pi * s * s;
    const double cos_t = std::sin(0.5 * pi * c * c);
    return pi * s * c * std::sqrt(cos_t / std::sin(t));
}

struct BandTable {
    std::vector<double> t;
    std::vector<double> c;  ///< jacobian times quadrature weight
};

BandTable build_table(int n, double lo, double hi) {
    const auto& rule = gauss_legendre(n);
    BandTable tab;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double t = 0.0;
        const double c = band_jacobian(mid + half * rule.nodes[i], t);
        tab.t.push_back(t);
        tab.c.push_back(half * rule.weights[i] * c);
    }
    return tab;
}

const BandTable& full_table(int n) {
    static const BandTable t32 = build_table(32, 0.0, 0.5 * pi);
    static const BandTable t64 = build_table(64, 0.0, 0.5 * pi);
    return n == 32 ? t32 : t64;
}

/// Weight without the band factor exp(-a d): per-node part of w(a + t).
struct NodeWeights {
    std::vector<double> e1, e2;
};

NodeWeights node_weights(const BandTable& tab, const BandWeight& w) {
    NodeWeights nw;
    nw.e1.resize(tab.t.size());
    if (w.two_terms) nw.e2.resize(tab.t.size());
    for (std::size_t i = 0; i < tab.t.size(); ++i) {
        nw.e1[i] = std::exp(-tab.t[i] * w.d1);
        if (w.two_terms) nw.e2[i] = std::exp(-tab.t[i] * w.d2);
    }
    return nw;
}

double band_integral(const BandTable& tab, const NodeWeights& nw, const BandWeight& w, double a, int order) {
    const double f1 = std::exp(-a * w.d1);
    const double f2 = w.two_terms ? std::exp(-a * w.d2) : 0.0;
    const bool need_denominator = w.period > 0.0 && a * w.period < 40.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < tab.t.size(); ++i) {
        const double s = a + tab.t[i];
        double weight = f1 * nw.e1[i];
        if (w.two_terms) weight += f2 * nw.e2[i];
        if (need_denominator) weight /= -std::expm1(-s * w.period);
        double p = 1.0 / std::sqrt(s);
        for (int r = 0; r < order; ++r) p *= s;
        sum += tab.c[i] * weight * p;
    }
    return sum;
}

struct BandEstimate {
    double value, err;
};

BandEstimate band_with_panels(const BandWeight& w, double a, int order, int panels) {
    double value = 0.0, err = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = 0.5 * pi * p / panels, hi = 0.5 * pi * (p + 1) / panels;
        const auto t32 = build_table(32, lo, hi);
        const auto t64 = build_table(64, lo, hi);
        const double i32 = band_integral(t32, node_weights(t32, w), w, a, order);
        const double i64 = band_integral(t64, node_weights(t64, w), w, a, order);
        value += i64;
        err += std::fabs(i64 - i32);
    }
    return {value, err};
}

}  // namespace

BandSum laplace_band_sum(const BandWeight& w, int order, double tol) {
    if (!(w.d1 > 0.0) || (w.two_terms && !(w.d2 > 0.0)))
        throw DomainError("laplace_band_sum: decay rates must be positive");
    if (w.period > 0.0 && w.d1 > w.period) throw DomainError("laplace_band_sum: decay exceeds the period");

    const auto& t32 = full_table(32);
    const auto& t64 = full_table(64);
    const auto nw32 = node_weights(t32, w);
    const auto nw64 = node_weights(t64, w);

    const double dmin = w.two_terms ? std::min(w.d1, w.d2) : w.d1;
    // Bound for the weight relative to exp(-a dmin).
    double amp = w.two_terms ? 2.0 : 1.0;
    if (w.period > 0.0) amp /= -std::expm1(-0.5 * pi * w.period);
    // int over a band of sqrt(|tan s|) is pi / sqrt(2).
    auto envelope = [&](double a) {
        return amp * std::exp(-a * dmin) * (pi / std::numbers::sqrt2) / std::sqrt(a) *
               std::pow(a + 0.5 * pi, order);
    };

    BandSum out;
    const double band_budget = tol / 20.0;
    for (int n = 1;; ++n) {
        const double a = (2.0 * n - 1.0) * 0.5 * pi;
        const double i64 = band_integral(t64, nw64, w, a, order);
        const double i32 = band_integral(t32, nw32, w, a, order);
        double value = i64, err = std::fabs(i64 - i32);
        // Sharp weights (large decay) need theta panels; only the first few
        // bands carry enough mass for this to matter.
        for (int panels = 2; err > band_budget && err > 1e-15 * std::fabs(value) && panels <= 64; panels *= 2) {
            const auto est = band_with_panels(w, a, order, panels);
            value = est.value;
            err = est.err;
        }
        out.value += value;
        out.err_est += err;
        out.bands = n;

        const double next = a + pi;
        const double rho = std::exp(-pi * dmin) * std::pow(1.0 + pi / (next + 0.5 * pi), order);
        if (rho < 1.0) {
            const double tail = envelope(next) / (1.0 - rho);
            if (tail < tol / 10.0) {
                out.err_est += tail;
                break;
            }
        }
        if (n > 10000000) throw NumericError("laplace_band_sum: band series failed to converge");
    }
    if (!std::isfinite(out.value)) throw NumericError("laplace_band_sum: non-finite result");
    return out;
}

}  // namespace whitham

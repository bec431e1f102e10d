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
#include <map>
#include <numbers>

#include "whitham/bifurcation.hpp"
#include "whitham/errors.hpp"
#include "whitham/symbol.hpp"

using namespace whitham;
using std::numbers::pi;

namespace {

// Independent oracle: solve the order-by-order hierarchy directly in cosine
// mode space, with the product rule cos a cos b = (cos(a-b) + cos(a+b)) / 2.
using Modes = std::map<int, double>;

Modes mul(const Modes& f, const Modes& g) {
    Modes h;
    for (auto [a, x] : f)
        for (auto [b, y] : g) {
            h[std::abs(a - b)] += 0.5 * x * y;
            h[a + b] += 0.5 * x * y;
        }
    return h;
}

void axpy(Modes& into, double c, const Modes& f) {
    for (auto [k, v] : f) into[k] += c * v;
}

Modes invert(const Modes& rhs, double xi) {
    const double mu0 = eval_symbol(xi);
    Modes out;
    for (auto [k, v] : rhs)
        if (k != 1) out[k] = v / (eval_symbol(k * xi) - mu0);
    return out;
}

struct Oracle {
    double mu2, mu4;
    Modes p2, p3, p4;
};

Oracle hierarchy(double xi) {
    Oracle o;
    const Modes p1{{1, 1.0}};
    Modes r2;
    axpy(r2, -1.0, mul(p1, p1));
    o.p2 = invert(r2, xi);
    Modes r3;
    axpy(r3, -2.0, mul(p1, o.p2));
    o.mu2 = -r3[1];
    r3[1] = 0.0;
    o.p3 = invert(r3, xi);
    Modes r4;
    axpy(r4, o.mu2, o.p2);
    axpy(r4, -2.0, mul(p1, o.p3));
    axpy(r4, -1.0, mul(o.p2, o.p2));
    o.p4 = invert(r4, xi);
    Modes r5;
    axpy(r5, o.mu2, o.p3);
    axpy(r5, -2.0, mul(p1, o.p4));
    axpy(r5, -2.0, mul(o.p2, o.p3));
    o.mu4 = -r5[1];
    return o;
}

void check_modes(const std::map<int, double>& got, const Modes& want) {
    for (auto [k, v] : want) {
        const double g = got.count(k) ? got.at(k) : 0.0;
        CHECK(std::fabs(g - v) <= 1e-11 * std::max(1.0, std::fabs(v)));
    }
    for (auto [k, v] : got) CHECK(want.count(k) == 1);
}

}  // namespace

TEST_CASE("bifurcation points") {
    CHECK(bifurcation_point(2.0 * pi, 1) == eval_symbol(1.0));
    CHECK(bifurcation_point(2.0 * pi, 3) == eval_symbol(3.0));
    CHECK(bifurcation_point(2.0 * pi, 1) == doctest::Approx(0.8726936208978296).epsilon(1e-15));
    CHECK_THROWS_AS(bifurcation_point(0.0, 1), DomainError);
    CHECK_THROWS_AS(bifurcation_point(1.0, 0), DomainError);
}

TEST_CASE("expansion coefficients match the mode-space hierarchy") {
    for (double xi : {0.3, 1.0, 2.0, 2.44, 3.0, 6.0}) {
        const auto e = expansion_coeffs(xi);
        const auto o = hierarchy(xi);
        CHECK(e.mu0 == eval_symbol(xi));
        CHECK(e.mu2 == doctest::Approx(o.mu2).epsilon(1e-12));
        CHECK(e.mu4 == doctest::Approx(o.mu4).epsilon(1e-11));
        Modes p2 = o.p2, p3 = o.p3, p4 = o.p4;
        // The oracle carries explicit zeros for cancelled modes; drop them.
        for (Modes* m : {&p2, &p3, &p4})
            std::erase_if(*m, [](const auto& kv) { return std::fabs(kv.second) < 1e-300; });
        check_modes(e.phi2, p2);
        check_modes(e.phi3, p3);
        check_modes(e.phi4, p4);
    }
}

TEST_CASE("reference values at xi = 1") {
    const auto e = expansion_coeffs(1.0);
    CHECK(e.mu2 == doctest::Approx(-5.05271292765865).epsilon(1e-12));
    CHECK(e.mu4 == doctest::Approx(43.10971183578167).epsilon(1e-12));
    CHECK(e.mu2 < 0.0);
}

TEST_CASE("mu2 is increasing and changes sign once") {
    double prev = expansion_coeffs(0.1).mu2;
    for (double xi = 0.2; xi <= 10.0; xi += 0.1) {
        const double v = expansion_coeffs(xi).mu2;
        CHECK(v > prev);
        prev = v;
    }
    const auto c = find_xi0();
    CHECK(c.xi0 == doctest::Approx(2.4440439536946057).epsilon(1e-10));
    CHECK(c.P0 == doctest::Approx(2.0 * pi / c.xi0).epsilon(1e-15));
    CHECK(c.mu4 == doctest::Approx(12.84187855174411).epsilon(1e-8));
    CHECK(c.mu4 > 0.0);
    CHECK(expansion_coeffs(c.xi0 - 1e-9).mu2 < 0.0);
    CHECK(expansion_coeffs(c.xi0 + 1e-9).mu2 > 0.0);
    CHECK(expansion_coeffs(2.0 * pi / 10.0).mu2 < 0.0);
}

TEST_CASE("expansion wave") {
    const double xi = 1.0;
    const CosineGrid g(2.0 * pi, 32);
    CHECK_THROWS_AS(expansion_wave(1.1, 0.01, g), DomainError);
    CHECK_THROWS_AS(expansion_wave(1.0, 0.01, CosineGrid(2.0 * pi, 2)), DomainError);

    const auto w = expansion_wave(xi, 0.0, g);
    CHECK(sup_norm(w.values.data) == 0.0);
    CHECK(w.mu == eval_symbol(xi));

    // mu is even in s; s -> -s is the half-period shift of phi.
    const auto wp = expansion_wave(xi, 0.03, g);
    const auto wm = expansion_wave(xi, -0.03, g);
    CHECK(wp.mu == wm.mu);
    const auto& vp = wp.values.data;
    const auto& vm = wm.values.data;
    const std::size_t n = vp.size() - 1;
    for (std::size_t j = 0; j <= n; ++j) CHECK(std::fabs(vp[j] - vm[n - j]) < 1e-15);

    // Residual scales like s^5: halving s reduces it by about 32.
    const auto r1 = sup_norm(residual(expansion_wave(xi, 0.02, g)).data);
    const auto r2 = sup_norm(residual(expansion_wave(xi, 0.01, g)).data);
    CHECK(r1 / r2 >= 12.8);
    CHECK(r1 / r2 <= 40.0);

    // Tangent against a centered difference.
    const double s = 0.02, h = 1e-6;
    const auto t = expansion_tangent(xi, s, g);
    const auto a = expansion_wave(xi, s + h, g);
    const auto b = expansion_wave(xi, s - h, g);
    CHECK(t.mu == doctest::Approx((a.mu - b.mu) / (2 * h)).epsilon(1e-7));
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::fabs(t.values.data[j] - (a.values.data[j] - b.values.data[j]) / (2 * h)) < 1e-8);
}

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
#include <random>
#include <vector>

#include "whitham/errors.hpp"
#include "whitham/periodic_kernel.hpp"
#include "whitham/quadrature.hpp"
#include "whitham/spectral_operator.hpp"
#include "whitham/symbol.hpp"

using namespace whitham;
using std::numbers::pi;

namespace {

std::vector<double> random_coeffs(std::size_t n, std::mt19937& rng, int active) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(n, 0.0);
    for (int k = 0; k < active && static_cast<std::size_t>(k) < n; ++k) a[static_cast<std::size_t>(k)] = u(rng) / (1 + k);
    return a;
}

double eval_cos_series(const std::vector<double>& a, double xi, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::cos(static_cast<double>(k) * xi * x);
    return s;
}

}  // namespace

TEST_CASE("grid construction") {
    CHECK_THROWS_AS(CosineGrid(2.0, 12), DomainError);
    CHECK_THROWS_AS(CosineGrid(2.0, 1), DomainError);
    CHECK_THROWS_AS(CosineGrid(0.0, 16), DomainError);
    const CosineGrid g(2.0 * pi, 16);
    CHECK(g.size() == 17);
    CHECK(g.nodes().front() == 0.0);
    CHECK(g.nodes().back() == doctest::Approx(pi));
    CHECK(g.multipliers()[1] == eval_symbol(1.0));
}

TEST_CASE("transforms are mutual inverses and match direct summation") {
    std::mt19937 rng(7);
    const CosineGrid g(3.3, 64);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(g.size());
    for (double& x : v) x = u(rng);
    const auto back = g.to_values(g.to_coeffs(NodalValues{v})).data;
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::fabs(back[i] - v[i]) < 1e-12);

    const auto a = random_coeffs(g.size(), rng, 65);
    const auto vals = g.to_values(CosineCoeffs{a}).data;
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::fabs(vals[j] - eval_cos_series(a, g.wavenumber(), g.nodes()[j])) < 1e-12);
}

TEST_CASE("apply_L") {
    const CosineGrid g(2.0 * pi, 32);
    const NodalValues c{std::vector<double>(g.size(), 0.7)};
    for (double x : apply_L(c, g).data) CHECK(x == doctest::Approx(0.7).epsilon(1e-14));

    std::vector<double> a(g.size(), 0.0);
    a[1] = 1.0;
    const auto La = apply_L(CosineCoeffs{a}, g).data;
    CHECK(La[1] == eval_symbol(1.0));
    const auto Lv = apply_L(g.to_values(CosineCoeffs{a}), g).data;
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::fabs(Lv[j] - eval_symbol(1.0) * std::cos(g.nodes()[j])) < 1e-14);

    std::mt19937 rng(11);
    const auto r = random_coeffs(g.size(), rng, 33);
    const auto twice = apply_L(apply_L(CosineCoeffs{r}, g), g).data;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const double mk = g.multipliers()[k];
        CHECK(std::fabs(twice[k] - mk * mk * r[k]) < 1e-12);
    }
    CHECK_THROWS_AS(apply_L(CosineCoeffs{std::vector<double>(5, 0.0)}, g), DomainError);
}

TEST_CASE("L matrix reproduces the multiplier route") {
    std::mt19937 rng(3);
    const CosineGrid g(2.0 * pi, 64);
    const auto& L = g.L_matrix();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
    std::vector<double> vs(g.size());
    for (std::size_t i = 0; i < vs.size(); ++i) v(static_cast<Eigen::Index>(i)) = vs[i] = u(rng);
    const Eigen::VectorXd Lv = L * v;
    const auto ref = apply_L(NodalValues{vs}, g).data;
    for (std::size_t i = 0; i < vs.size(); ++i) CHECK(std::fabs(Lv(static_cast<Eigen::Index>(i)) - ref[i]) < 1e-13);
    // mode-1 row
    const auto a = g.to_coeffs(NodalValues{vs}).data;
    double s = 0.0;
    for (std::size_t j = 0; j < vs.size(); ++j) s += g.mode1_row()[j] * vs[j];
    CHECK(std::fabs(s - a[1]) < 1e-14);
}

TEST_CASE("L agrees with convolution against K_P") {
    // (L f)(x) = int_0^{sqrt(P/2)} 2u K_P(u^2) [f(x + u^2) + f(x - u^2)] du.
    const double P = 2.0 * pi;
    const double xi = 2.0 * pi / P;
    const std::vector<double> a{0.2, 1.0, -0.3, 0.1};
    const auto& rule = gauss_legendre(20);
    const double umax = std::sqrt(0.5 * P);
    for (double x : {0.0, 0.7, 2.0}) {
        double quad = 0.0;
        const int panels = 12;
        for (int p = 0; p < panels; ++p)
            quad += integrate_gl(rule, umax * p / panels, umax * (p + 1) / panels, [&](double u) {
                const double z = u * u;
                return 2.0 * u * pkernel_direct(z, P, 1e-13).value *
                       (eval_cos_series(a, xi, x + z) + eval_cos_series(a, xi, x - z));
            });
        double mult = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            mult += eval_symbol(static_cast<double>(k) * xi) * a[k] * std::cos(static_cast<double>(k) * xi * x);
        CHECK(std::fabs(quad - mult) < 1e-6);
    }
}

TEST_CASE("L is monotone on nonnegative trigonometric polynomials") {
    std::mt19937 rng(5);
    const CosineGrid g(2.0 * pi, 64);
    for (int trial = 0; trial < 10; ++trial) {
        // h = q^2 >= 0 with q a random low-degree polynomial; f = g + h.
        const auto q = g.to_values(CosineCoeffs{random_coeffs(g.size(), rng, 6)}).data;
        std::vector<double> h(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) h[i] = q[i] * q[i];
        const auto Lh = apply_L(NodalValues{h}, g).data;
        for (double x : Lh) CHECK(x > 0.0);
    }
}

TEST_CASE("residual") {
    const double P = 2.0 * pi;
    const CosineGrid g(P, 32);
    for (auto rule : {ProductRule::collocation, ProductRule::dealiased}) {
        CHECK(sup_norm(residual(PeriodicWave::zero(g, 0.4), rule).data) == 0.0);
        const double mu = 0.83;
        const auto c = PeriodicWave::from_values(g, mu, std::vector<double>(g.size(), mu - 1.0));
        CHECK(sup_norm(residual(c, rule).data) < 1e-15);

        const double s = 0.01;
        std::vector<double> a(g.size(), 0.0);
        a[1] = s;
        const auto w = PeriodicWave::from_coeffs(g, eval_symbol(1.0), a);
        CHECK(sup_norm(residual(w, rule).data) == doctest::Approx(s * s).epsilon(1e-12));
    }
}

TEST_CASE("dealiased square of a pure mode-1 input has modes 0 and 2 only") {
    const CosineGrid g(2.0 * pi, 32);
    std::vector<double> a(g.size(), 0.0);
    a[1] = 1.0;
    const auto w = PeriodicWave::from_coeffs(g, 0.0, a);
    // F = -L phi - phi^2 with mu = 0; remove the linear part.
    auto F = residual(w, ProductRule::dealiased).data;
    const auto Lphi = apply_L(w.values, g).data;
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = -(F[i] + Lphi[i]);
    const auto sq = g.to_coeffs(NodalValues{F}).data;
    CHECK(sq[0] == doctest::Approx(0.5));
    CHECK(sq[2] == doctest::Approx(0.5));
    for (std::size_t k = 0; k < sq.size(); ++k)
        if (k != 0 && k != 2) CHECK(std::fabs(sq[k]) < 1e-15);
}

TEST_CASE("jacobian") {
    const double P = 2.0 * pi;
    const CosineGrid g(P, 32);
    // phi = 0: eigenvalues mu - m(k xi).
    {
        const auto J = jacobian(PeriodicWave::zero(g, 2.0));
        Eigen::EigenSolver<Eigen::MatrixXd> es(J);
        std::vector<double> ev;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            CHECK(std::fabs(es.eigenvalues()(i).imag()) < 1e-12);
            ev.push_back(es.eigenvalues()(i).real());
        }
        std::sort(ev.begin(), ev.end());
        std::vector<double> expect;
        for (double m : g.multipliers()) expect.push_back(2.0 - m);
        std::sort(expect.begin(), expect.end());
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(expect[i]).epsilon(1e-12));
        CHECK(ev.front() >= 1.0);
    }
    {
        const auto J = jacobian(PeriodicWave::zero(g, eval_symbol(1.0)));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        CHECK(svd.singularValues().minCoeff() < 1e-13);
    }
    // Central differences against the analytic matrix for both product rules.
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto rule : {ProductRule::collocation, ProductRule::dealiased}) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto w = PeriodicWave::from_coeffs(g, 0.8, random_coeffs(g.size(), rng, 12));
            std::vector<double> h(g.size());
            for (double& x : h) x = u(rng);
            const double eps = 1e-5;
            auto vp = w.values.data, vm = w.values.data;
            for (std::size_t i = 0; i < h.size(); ++i) {
                vp[i] += eps * h[i];
                vm[i] -= eps * h[i];
            }
            const auto Fp = residual(PeriodicWave::from_values(g, w.mu, vp), rule).data;
            const auto Fm = residual(PeriodicWave::from_values(g, w.mu, vm), rule).data;
            const auto J = jacobian(w, rule);
            const Eigen::VectorXd Jh = J * Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(h.size()));
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i) {
                const double fd = (Fp[i] - Fm[i]) / (2 * eps);
                num = std::max(num, std::fabs(fd - Jh(static_cast<Eigen::Index>(i))));
                den = std::max(den, std::fabs(Jh(static_cast<Eigen::Index>(i))));
            }
            CHECK(num / den < 1e-8);
        }
    }
}

TEST_CASE("spectral differentiation") {
    const double P = 2.0 * pi;
    const CosineGrid g(P, 32);
    const auto c = PeriodicWave::from_values(g, 1.0, std::vector<double>(g.size(), 3.0));
    CHECK(sup_norm(differentiate(c, 1).data) < 1e-14);
    CHECK(sup_norm(differentiate(c, 2).data) < 1e-14);

    std::vector<double> a(g.size(), 0.0);
    a[1] = 1.0;
    const auto w = PeriodicWave::from_coeffs(g, 1.0, a);
    const auto d2 = differentiate(w, 2).data;
    const auto d1 = differentiate(w, 1).data;
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::fabs(d2[j] + std::cos(g.nodes()[j])) < 1e-13);
        CHECK(std::fabs(d1[j] + std::sin(g.nodes()[j])) < 1e-13);
    }
    CHECK_THROWS_AS(differentiate(w, 3), DomainError);

    // Finite differences of a random trig polynomial: error O(h^2).
    std::mt19937 rng(23);
    const auto r = random_coeffs(g.size(), rng, 6);
    const auto rw = PeriodicWave::from_coeffs(g, 1.0, r);
    const auto r1 = differentiate(rw, 1).data;
    double e1 = 0.0, e2 = 0.0;
    for (double h : {1e-2, 5e-3}) {
        double err = 0.0;
        for (std::size_t j = 1; j + 1 < g.size(); ++j) {
            const double x = g.nodes()[j];
            const double fd = (eval_cos_series(r, 1.0, x + h) - eval_cos_series(r, 1.0, x - h)) / (2 * h);
            err = std::max(err, std::fabs(fd - r1[j]));
        }
        (h > 6e-3 ? e1 : e2) = err;
    }
    CHECK(e1 / e2 > 3.5);
}

TEST_CASE("wave JSON round trip is bit exact") {
    std::mt19937 rng(29);
    const CosineGrid g(2.0 * pi, 64);
    const auto w = PeriodicWave::from_coeffs(g, 0.7712345678901234, random_coeffs(g.size(), rng, 65));
    const auto back = wave_from_json(wave_to_json(w));
    CHECK(back.mu == w.mu);
    CHECK(back.grid.period() == w.grid.period());
    CHECK(back.grid.modes() == 64);
    CHECK(back.coeffs.data == w.coeffs.data);
    CHECK(wave_to_json(back) == wave_to_json(w));
    CHECK_THROWS_AS(wave_from_json("{"), DomainError);
    CHECK_THROWS_AS(wave_from_json(R"({"P": 1, "mu": 1, "N": 4, "coeffs": [1, 2]})"), DomainError);
    CHECK_THROWS_AS(wave_from_json(R"({"P": 1, "mu": 1, "N": 4})"), DomainError);
    CHECK_THROWS_AS(wave_from_json(R"({"P": -1, "mu": 1, "N": 2, "coeffs": [1, 2, 3]})"), DomainError);
}

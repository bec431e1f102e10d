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

#include "whitham/spectral_operator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <json.hpp>

#include "whitham/errors.hpp"
#include "whitham/symbol.hpp"

namespace whitham {

namespace {

// FFTW's planner is not reentrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Plan {
    fftw_plan plan = nullptr;
    int n = 0;

    Plan(int size, fftw_r2r_kind kind) : n(size) {
        std::vector<double> in(static_cast<std::size_t>(size)), out(static_cast<std::size_t>(size));
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_r2r_1d(size, in.data(), out.data(), kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw NumericError("FFTW plan creation failed");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::vector<double> operator()(std::vector<double> in) const {
        std::vector<double> out(in.size());
        fftw_execute_r2r(plan, in.data(), out.data());
        return out;
    }
};

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

struct CosineGrid::Impl {
    double P;
    int N;
    double xi;
    std::vector<double> nodes, m, row1, mean_w;
    Plan dct, dct_padded, dst;
    mutable std::once_flag L_once;
    mutable Eigen::MatrixXd L;

    Impl(double period, int n)
        : P(period), N(n), xi(2.0 * std::numbers::pi / period),
          dct(n + 1, FFTW_REDFT00), dct_padded(2 * n + 1, FFTW_REDFT00), dst(std::max(n - 1, 1), FFTW_RODFT00) {
        const auto sz = static_cast<std::size_t>(N) + 1;
        nodes.resize(sz);
        row1.resize(sz);
        mean_w.resize(sz);
        for (std::size_t j = 0; j < sz; ++j) {
            nodes[j] = 0.5 * P * static_cast<double>(j) / N;
            const double w = (j == 0 || j == sz - 1) ? 0.5 : 1.0;
            row1[j] = 2.0 / N * w * std::cos(std::numbers::pi * static_cast<double>(j) / N);
            mean_w[j] = w / N;
        }
        m = whitham::multipliers(P, N);
    }
};

CosineGrid::CosineGrid(double P, int N) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("CosineGrid: period must be positive and finite");
    if (N < 2 || !is_power_of_two(N)) throw DomainError("CosineGrid: N must be a power of two >= 2");
    impl_ = std::make_shared<const Impl>(P, N);
}

double CosineGrid::period() const { return impl_->P; }
int CosineGrid::modes() const { return impl_->N; }
double CosineGrid::wavenumber() const { return impl_->xi; }
const std::vector<double>& CosineGrid::nodes() const { return impl_->nodes; }
const std::vector<double>& CosineGrid::multipliers() const { return impl_->m; }
const std::vector<double>& CosineGrid::mode1_row() const { return impl_->row1; }
const std::vector<double>& CosineGrid::mean_weights() const { return impl_->mean_w; }

bool CosineGrid::same_as(const CosineGrid& other) const {
    return impl_ == other.impl_ || (impl_->P == other.impl_->P && impl_->N == other.impl_->N);
}

NodalValues CosineGrid::to_values(const CosineCoeffs& a) const {
    if (a.data.size() != size()) throw DomainError("to_values: coefficient count does not match the grid");
    auto b = a.data;
    b.front() *= 2.0;
    b.back() *= 2.0;
    auto v = impl_->dct(std::move(b));
    for (double& x : v) x *= 0.5;
    return NodalValues{std::move(v)};
}

CosineCoeffs CosineGrid::to_coeffs(const NodalValues& v) const {
    if (v.data.size() != size()) throw DomainError("to_coeffs: value count does not match the grid");
    auto a = impl_->dct(v.data);
    const double scale = 1.0 / impl_->N;
    for (double& x : a) x *= scale;
    a.front() *= 0.5;
    a.back() *= 0.5;
    return CosineCoeffs{std::move(a)};
}

NodalValues CosineGrid::sine_values(std::span<const double> b) const {
    const int N = impl_->N;
    if (b.size() != static_cast<std::size_t>(N - 1)) throw DomainError("sine_values: expected N - 1 coefficients");
    std::vector<double> out(size(), 0.0);
    if (N > 1) {
        const auto y = impl_->dst(std::vector<double>(b.begin(), b.end()));
        for (std::size_t i = 0; i < y.size(); ++i) out[i + 1] = 0.5 * y[i];
    }
    return NodalValues{std::move(out)};
}

std::vector<double> CosineGrid::padded_values(const CosineCoeffs& a) const {
    if (a.data.size() != size()) throw DomainError("padded_values: coefficient count does not match the grid");
    std::vector<double> b(2 * static_cast<std::size_t>(impl_->N) + 1, 0.0);
    std::copy(a.data.begin(), a.data.end(), b.begin());
    b.front() *= 2.0;
    auto v = impl_->dct_padded(std::move(b));
    for (double& x : v) x *= 0.5;
    return v;
}

CosineCoeffs CosineGrid::truncate_padded(std::span<const double> padded) const {
    if (padded.size() != 2 * static_cast<std::size_t>(impl_->N) + 1)
        throw DomainError("truncate_padded: expected 2N + 1 values");
    auto a = impl_->dct_padded(std::vector<double>(padded.begin(), padded.end()));
    const double scale = 1.0 / (2.0 * impl_->N);
    a.resize(size());
    for (double& x : a) x *= scale;
    a.front() *= 0.5;
    return CosineCoeffs{std::move(a)};
}

const Eigen::MatrixXd& CosineGrid::L_matrix(Exec exec) const {
    std::call_once(impl_->L_once, [&] {
        const int N = impl_->N;
        const auto n = size();
        // G(l) = (1/N) sum'' m_k cos(pi k l / N), even and 2N-periodic in l.
        auto g = impl_->dct(impl_->m);
        for (double& x : g) x /= 2.0 * N;
        auto G = [&](long l) {
            l = std::labs(l);
            if (l > N) l = 2L * N - l;
            return g[static_cast<std::size_t>(l)];
        };
        Eigen::MatrixXd L(n, n);
        for_each_index(n, exec, [&](std::size_t j) {
            const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto il = static_cast<long>(i), jl = static_cast<long>(j);
                L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w * (G(il - jl) + G(il + jl));
            }
        });
        impl_->L = std::move(L);
    });
    return impl_->L;
}

PeriodicWave PeriodicWave::from_coeffs(const CosineGrid& grid, double mu, std::vector<double> coeffs) {
    PeriodicWave w{grid, mu, CosineCoeffs{std::move(coeffs)}, {}};
    w.values = grid.to_values(w.coeffs);
    return w;
}

PeriodicWave PeriodicWave::from_values(const CosineGrid& grid, double mu, std::vector<double> values) {
    PeriodicWave w{grid, mu, {}, NodalValues{std::move(values)}};
    w.coeffs = grid.to_coeffs(w.values);
    return w;
}

PeriodicWave PeriodicWave::zero(const CosineGrid& grid, double mu) {
    return PeriodicWave{grid, mu, CosineCoeffs{std::vector<double>(grid.size(), 0.0)},
                        NodalValues{std::vector<double>(grid.size(), 0.0)}};
}

double PeriodicWave::max_value() const { return *std::max_element(values.data.begin(), values.data.end()); }

CosineCoeffs apply_L(const CosineCoeffs& a, const CosineGrid& grid) {
    if (a.data.size() != grid.size()) throw DomainError("apply_L: coefficient count does not match the grid");
    CosineCoeffs out{a.data};
    const auto& m = grid.multipliers();
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] *= m[k];
    return out;
}

NodalValues apply_L(const NodalValues& v, const CosineGrid& grid) {
    return grid.to_values(apply_L(grid.to_coeffs(v), grid));
}

namespace {

std::vector<double> dealiased_product(const CosineGrid& grid, const std::vector<double>& pa,
                                      const CosineCoeffs& b) {
    auto pb = grid.padded_values(b);
    for (std::size_t i = 0; i < pb.size(); ++i) pb[i] *= pa[i];
    return grid.to_values(grid.truncate_padded(pb)).data;
}

}  // namespace

NodalValues residual(const PeriodicWave& wave, ProductRule rule) {
    const auto& v = wave.values.data;
    const auto Lv = apply_L(wave.coeffs, wave.grid);
    auto out = wave.grid.to_values(Lv).data;
    std::vector<double> sq(v.size());
    if (rule == ProductRule::collocation) {
        for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
    } else {
        sq = dealiased_product(wave.grid, wave.grid.padded_values(wave.coeffs), wave.coeffs);
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = wave.mu * v[i] - out[i] - sq[i];
    return NodalValues{std::move(out)};
}

Eigen::MatrixXd jacobian(const PeriodicWave& wave, ProductRule rule, Exec exec) {
    const auto n = static_cast<Eigen::Index>(wave.grid.size());
    Eigen::MatrixXd J = -wave.grid.L_matrix(exec);
    const auto& v = wave.values.data;
    if (rule == ProductRule::collocation) {
        for (Eigen::Index i = 0; i < n; ++i) J(i, i) += wave.mu - 2.0 * v[static_cast<std::size_t>(i)];
        return J;
    }
    const auto pa = wave.grid.padded_values(wave.coeffs);
    for_each_index(static_cast<std::size_t>(n), exec, [&](std::size_t j) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[j] = 1.0;
        const auto col = dealiased_product(wave.grid, pa, wave.grid.to_coeffs(NodalValues{std::move(e)}));
        for (Eigen::Index i = 0; i < n; ++i)
            J(i, static_cast<Eigen::Index>(j)) -= 2.0 * col[static_cast<std::size_t>(i)];
        J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += wave.mu;
    });
    return J;
}

NodalValues differentiate(const PeriodicWave& wave, int order) {
    const auto& a = wave.coeffs.data;
    const double xi = wave.grid.wavenumber();
    const int N = wave.grid.modes();
    if (order == 1) {
        std::vector<double> b(static_cast<std::size_t>(N - 1));
        for (int k = 1; k < N; ++k) b[static_cast<std::size_t>(k - 1)] = -a[static_cast<std::size_t>(k)] * k * xi;
        return wave.grid.sine_values(b);
    }
    if (order == 2) {
        CosineCoeffs d{a};
        for (int k = 0; k <= N; ++k) d.data[static_cast<std::size_t>(k)] *= -(k * xi) * (k * xi);
        return wave.grid.to_values(d);
    }
    throw DomainError("differentiate: order must be 1 or 2");
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

std::string wave_to_json(const PeriodicWave& wave) {
    nlohmann::json j;
    j["P"] = wave.grid.period();
    j["mu"] = wave.mu;
    j["N"] = wave.grid.modes();
    j["coeffs"] = wave.coeffs.data;
    return j.dump();
}

PeriodicWave wave_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("wave JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("wave JSON: expected an object");
    for (const char* key : {"P", "mu", "N", "coeffs"})
        if (!j.contains(key)) throw DomainError(std::string("wave JSON: missing field ") + key);
    if (!j["P"].is_number() || !j["mu"].is_number() || !j["N"].is_number_integer() || !j["coeffs"].is_array())
        throw DomainError("wave JSON: wrong field types");
    const double P = j["P"].get<double>();
    const double mu = j["mu"].get<double>();
    const int N = j["N"].get<int>();
    std::vector<double> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_number()) throw DomainError("wave JSON: non-numeric coefficient");
        coeffs.push_back(c.get<double>());
    }
    if (!std::isfinite(mu)) throw DomainError("wave JSON: non-finite mu");
    if (coeffs.size() != static_cast<std::size_t>(N) + 1) throw DomainError("wave JSON: expected N + 1 coefficients");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw DomainError("wave JSON: non-finite coefficient");
    return PeriodicWave::from_coeffs(CosineGrid(P, N), mu, std::move(coeffs));
}

}  // namespace whitham

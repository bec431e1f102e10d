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

#include "whitham/steady_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "whitham/bifurcation.hpp"
#include "whitham/periodic_kernel.hpp"

namespace whitham {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::gap_reached: return "gap_reached";
        case Termination::step_too_small: return "step_too_small";
        case Termination::max_steps: return "max_steps";
    }
    return "unknown";
}

namespace {

Check strict(double margin, double floor) {
    return Check{margin > floor ? CheckStatus::pass : CheckStatus::fail, margin};
}

}  // namespace

bool Diagnostics::all_ok() const { return first_failure().empty(); }

std::string Diagnostics::first_failure() const {
    const std::pair<const char*, const Check*> checks[] = {
        {"monotone", &monotone},
        {"below_mu_half", &below_mu_half},
        {"second_deriv_crest", &second_deriv_crest},
        {"second_deriv_trough", &second_deriv_trough},
        {"bounds", &bounds},
        {"mu_range", &mu_range},
        {"mu_le_2", &mu_le_2},
        {"mean_identity", &mean_identity},
        {"lambda_bound", &lambda_bound},
    };
    for (const auto& [name, c] : checks)
        if (!c->ok()) return name;
    return {};
}

Diagnostics run_diagnostics(const PeriodicWave& wave, double lambda) {
    Diagnostics d;
    const auto& v = wave.values.data;
    const std::size_t N = v.size() - 1;
    const double mu = wave.mu;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    d.phi_max = *mx;
    d.phi_min = *mn;
    d.phi_trough = v[N];
    d.gap = 0.5 * mu - d.phi_max;
    d.trough_gap = 0.5 * mu - d.phi_trough;
    d.mean = wave.coeffs.data[0];
    d.floor = 1e3 * std::numeric_limits<double>::epsilon() * sup_norm(v);

    if (d.phi_max - d.phi_min > d.floor) {
        const auto d1 = differentiate(wave, 1).data;
        const auto d2 = differentiate(wave, 2).data;
        double m = HUGE_VAL;
        for (std::size_t j = 1; j < N; ++j) m = std::min(m, -d1[j]);
        d.monotone = strict(m, d.floor);
        d.second_deriv_crest = strict(-d2[0], d.floor);
        d.second_deriv_trough = strict(d2[N], d.floor);
    }
    d.below_mu_half = strict(d.gap, d.floor);
    d.bounds = strict(std::min(d.phi_min - (mu - 1.0), 1.0 - d.phi_max), d.floor);
    d.mu_range = strict(std::min(mu, 1.0 - mu), 0.0);
    d.mu_le_2 = Check{mu <= 2.0 ? CheckStatus::pass : CheckStatus::fail, 2.0 - mu};

    // (mu - 1) int phi = int phi^2; the trapezoid rule is exact for the
    // discrete problem because it is the mode-0 row of the transform.
    const auto& w = wave.grid.mean_weights();
    double sq = 0.0;
    for (std::size_t j = 0; j <= N; ++j) sq += w[j] * v[j] * v[j];
    const double lhs = (mu - 1.0) * d.mean;
    const double scale = std::max(std::fabs(lhs), sq);
    d.mean_identity_residual = scale > 0.0 ? std::fabs(lhs - sq) / scale : 0.0;
    d.mean_identity = Check{d.mean_identity_residual < kMeanIdentityTol ? CheckStatus::pass : CheckStatus::fail,
                            kMeanIdentityTol - d.mean_identity_residual};

    d.lambda = lambda > 0.0 ? lambda : lambda_bound(wave.grid.period());
    const double lm = d.trough_gap - d.lambda;
    d.lambda_bound = Check{lm >= 0.0 ? CheckStatus::pass : CheckStatus::fail, lm};
    return d;
}

double lambda_bound(double P, Exec exec) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("lambda_bound: period must be positive and finite");
    static std::mutex guard;
    static std::map<double, double> cache;
    {
        std::lock_guard lock(guard);
        if (auto it = cache.find(P); it != cache.end()) return it->second;
    }
    const double lambda = lambda_bound_uncached(P, exec);
    std::lock_guard lock(guard);
    cache[P] = lambda;
    return lambda;
}

double lambda_bound_uncached(double P, Exec exec) {
    if (!(P > 0.0) || !std::isfinite(P)) throw DomainError("lambda_bound: period must be positive and finite");
    constexpr double tol = 1e-13;
    const double lo = -0.375 * P, hi = -0.125 * P;
    constexpr int n = 64;
    const double h = (hi - lo) / n;

    // On the grid x - y = k h and x + y = 2 lo + k h, so two short tables suffice.
    std::vector<double> diff(n + 1), sum(2 * n + 1);
    for_each_index(n + 1 + 2 * n + 1, exec, [&](std::size_t idx) {
        if (idx <= n) {
            if (idx > 0) diff[idx] = pkernel_direct(static_cast<double>(idx) * h, P, tol).value;
        } else {
            const std::size_t k = idx - (n + 1);
            sum[k] = pkernel_direct(2.0 * lo + static_cast<double>(k) * h, P, tol).value;
        }
    });
    double best = HUGE_VAL, bx = lo, by = lo;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const double val = diff[static_cast<std::size_t>(std::abs(i - j))] - sum[static_cast<std::size_t>(i + j)];
            if (val < best) {
                best = val;
                bx = lo + i * h;
                by = lo + j * h;
            }
        }

    // Local refinement: shrinking 11 x 11 stencils around the incumbent.
    auto D = [&](double x, double y) {
        return pkernel_direct(x - y, P, tol).value - pkernel_direct(x + y, P, tol).value;
    };
    double width = h;
    for (int level = 0; level < 4; ++level) {
        constexpr int m = 11;
        std::vector<double> vals(m * m, HUGE_VAL);
        const double cx = bx, cy = by;
        for_each_index(m * m, exec, [&](std::size_t idx) {
            const double x = std::clamp(cx + width * (static_cast<double>(idx / m) - 5) / 5.0, lo, hi);
            const double y = std::clamp(cy + width * (static_cast<double>(idx % m) - 5) / 5.0, lo, hi);
            if (std::fabs(x - y) > 1e-3 * h) vals[idx] = D(x, y);
        });
        for (std::size_t idx = 0; idx < vals.size(); ++idx)
            if (vals[idx] < best) {
                best = vals[idx];
                bx = std::clamp(cx + width * (static_cast<double>(idx / m) - 5) / 5.0, lo, hi);
                by = std::clamp(cy + width * (static_cast<double>(idx % m) - 5) / 5.0, lo, hi);
            }
        width /= 5.0;
    }
    if (!(best > 0.0)) throw NumericError("lambda_bound: kernel comparison minimum is not positive");
    return 0.125 * P * best;
}

PeriodicWave galilean_map(const PeriodicWave& wave) {
    const double shift = 1.0 - wave.mu;
    PeriodicWave out = wave;
    out.mu = 2.0 - wave.mu;
    out.coeffs.data[0] += shift;
    for (double& v : out.values.data) v += shift;
    return out;
}

void ContinuationConfig::validate() const {
    auto bad = [](const std::string& what) { throw DomainError("ContinuationConfig: " + what); };
    if (!(P > 0.0) || !std::isfinite(P)) bad("P must be positive and finite");
    if (N < 4 || (N & (N - 1)) != 0) bad("N must be a power of two >= 4");
    if (!(newton_tol > 0.0)) bad("newton_tol must be positive");
    if (max_newton < 1) bad("max_newton must be >= 1");
    if (!(ds_min > 0.0 && ds_min <= ds_init && ds_init <= ds_max)) bad("need 0 < ds_min <= ds_init <= ds_max");
    if (!(stop_gap > 0.0)) bad("stop_gap must be positive");
    if (max_steps < 1) bad("max_steps must be >= 1");
    if (!(s_start != 0.0) || !std::isfinite(s_start)) bad("s_start must be nonzero");
}

std::string ContinuationConfig::to_json() const {
    nlohmann::ordered_json j;
    j["P"] = P;
    j["N"] = N;
    j["newton_tol"] = newton_tol;
    j["max_newton"] = max_newton;
    j["ds_init"] = ds_init;
    j["ds_min"] = ds_min;
    j["ds_max"] = ds_max;
    j["stop_gap"] = stop_gap;
    j["max_steps"] = max_steps;
    j["s_start"] = s_start;
    j["product_rule"] = product_rule == ProductRule::collocation ? "collocation" : "dealiased";
    return j.dump(2);
}

ContinuationConfig ContinuationConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config JSON: expected an object");
    ContinuationConfig c;
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "P") c.P = val.get<double>();
            else if (key == "N") c.N = val.get<int>();
            else if (key == "newton_tol") c.newton_tol = val.get<double>();
            else if (key == "max_newton") c.max_newton = val.get<int>();
            else if (key == "ds_init") c.ds_init = val.get<double>();
            else if (key == "ds_min") c.ds_min = val.get<double>();
            else if (key == "ds_max") c.ds_max = val.get<double>();
            else if (key == "stop_gap") c.stop_gap = val.get<double>();
            else if (key == "max_steps") c.max_steps = val.get<int>();
            else if (key == "s_start") c.s_start = val.get<double>();
            else if (key == "product_rule") {
                const auto s = val.get<std::string>();
                if (s == "collocation") c.product_rule = ProductRule::collocation;
                else if (s == "dealiased") c.product_rule = ProductRule::dealiased;
                else throw DomainError("config JSON: product_rule must be collocation or dealiased");
            } else {
                throw DomainError("config JSON: unknown field " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

Constraint Constraint::fix_mu(double mu) {
    Constraint c;
    c.kind = Kind::fix_mu;
    c.value = mu;
    return c;
}

Constraint Constraint::fix_s(double s) {
    Constraint c;
    c.kind = Kind::fix_s;
    c.value = s;
    return c;
}

Constraint Constraint::arclength(const PeriodicWave& prev, std::vector<double> tangent_values, double tangent_mu,
                                 double ds) {
    Constraint c;
    c.kind = Kind::arclength;
    c.value = ds;
    c.prev_values = prev.values.data;
    c.prev_mu = prev.mu;
    c.tangent_values = std::move(tangent_values);
    c.tangent_mu = tangent_mu;
    return c;
}

double arclength_dot(const CosineGrid& grid, std::span<const double> av, double amu, std::span<const double> bv,
                     double bmu) {
    const auto& w = grid.mean_weights();
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * av[j] * bv[j];
    return s + amu * bmu;
}

BranchPoint newton_correct(const PeriodicWave& guess, const Constraint& constraint, const NewtonOptions& opt) {
    const auto& grid = guess.grid;
    const auto n = static_cast<Eigen::Index>(grid.size());
    const auto un = static_cast<std::size_t>(n);
    for (double x : guess.values.data)
        if (!std::isfinite(x)) throw DomainError("newton_correct: non-finite guess");
    if (!std::isfinite(guess.mu)) throw DomainError("newton_correct: non-finite mu");
    if (constraint.kind == Constraint::Kind::arclength &&
        (constraint.prev_values.size() != un || constraint.tangent_values.size() != un))
        throw DomainError("newton_correct: arclength data does not match the grid");

    const auto& row1 = grid.mode1_row();
    const auto& w = grid.mean_weights();
    auto constraint_value = [&](const std::vector<double>& v, double mu) {
        switch (constraint.kind) {
            case Constraint::Kind::fix_mu: return mu - constraint.value;
            case Constraint::Kind::fix_s: {
                double s = 0.0;
                for (std::size_t j = 0; j < un; ++j) s += row1[j] * v[j];
                return s - constraint.value;
            }
            case Constraint::Kind::arclength: {
                double s = (mu - constraint.prev_mu) * constraint.tangent_mu;
                for (std::size_t j = 0; j < un; ++j)
                    s += w[j] * (v[j] - constraint.prev_values[j]) * constraint.tangent_values[j];
                return s - constraint.value;
            }
        }
        return 0.0;
    };

    std::vector<double> v = guess.values.data;
    double mu = guess.mu;
    BranchPoint bp{guess, 0.0, 0.0, {}, 0, 0.0, 0.0, 0, 0.0, false};
    Eigen::MatrixXd A;
    std::optional<Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>>> lu;
    auto apply_delta = [&](const Eigen::VectorXd& delta) {
        for (std::size_t j = 0; j < un; ++j) v[j] += delta(static_cast<Eigen::Index>(j));
        mu += delta(n);
    };
    auto rhs_of = [&](const std::vector<double>& F, double g) {
        Eigen::VectorXd rhs(n + 1);
        for (Eigen::Index i = 0; i < n; ++i) rhs(i) = -F[static_cast<std::size_t>(i)];
        rhs(n) = -g;
        return rhs;
    };
    for (int it = 0;; ++it) {
        auto wave = PeriodicWave::from_values(grid, mu, v);
        auto F = residual(wave, opt.rule).data;
        double g = constraint_value(v, mu);
        double rn = sup_norm(F);
        if (!std::isfinite(rn) || !std::isfinite(g))
            throw DivergenceError("newton_correct: non-finite iterate", std::move(wave));
        if (rn < opt.tol && std::fabs(g) < opt.tol) {
            // Chord polish with the last factorization: nearly free, and it
            // takes a just-converged iterate down to rounding level.
            for (int k = 0; lu && k < 2 && rn > 1e-3 * opt.tol; ++k) {
                const auto v_old = v;
                const double mu_old = mu;
                apply_delta(lu->solve(rhs_of(F, g)));
                auto polished = PeriodicWave::from_values(grid, mu, v);
                const auto Fp = residual(polished, opt.rule).data;
                const double rp = sup_norm(Fp);
                if (!(rp < rn)) {
                    v = v_old;
                    mu = mu_old;
                    break;
                }
                wave = std::move(polished);
                F = Fp;
                g = constraint_value(v, mu);
                rn = rp;
            }
            bp.wave = std::move(wave);
            bp.newton_iters = it;
            bp.residual_norm = rn;
            break;
        }
        if (it >= opt.max_iter)
            throw DivergenceError("newton_correct: no convergence in " + std::to_string(opt.max_iter) +
                                      " iterations (|F| = " + std::to_string(rn) + ")",
                                  std::move(wave));

        lu.reset();
        A.resize(n + 1, n + 1);
        A.topLeftCorner(n, n) = jacobian(wave, opt.rule);
        for (Eigen::Index i = 0; i < n; ++i) A(i, n) = v[static_cast<std::size_t>(i)];  // dF/dmu = phi
        switch (constraint.kind) {
            case Constraint::Kind::fix_mu:
                A.row(n).setZero();
                A(n, n) = 1.0;
                break;
            case Constraint::Kind::fix_s:
                for (Eigen::Index j = 0; j < n; ++j) A(n, j) = row1[static_cast<std::size_t>(j)];
                A(n, n) = 0.0;
                break;
            case Constraint::Kind::arclength:
                for (Eigen::Index j = 0; j < n; ++j)
                    A(n, j) = w[static_cast<std::size_t>(j)] * constraint.tangent_values[static_cast<std::size_t>(j)];
                A(n, n) = constraint.tangent_mu;
                break;
        }
        lu.emplace(A);
        const double rcond = lu->rcond();
        bp.jacobian_cond = rcond > 0.0 ? 1.0 / rcond : HUGE_VAL;
        if (constraint.kind == Constraint::Kind::fix_mu && !(rcond > 1e-13))
            throw FoldError("newton_correct: singular bordered matrix at fixed mu (rcond = " + std::to_string(rcond) +
                            ")");
        apply_delta(lu->solve(rhs_of(F, g)));
    }
    bp.s_param = bp.wave.s_param();
    if (opt.diagnostics) bp.diagnostics = run_diagnostics(bp.wave, opt.lambda);
    return bp;
}

BranchResult trace_branch(const ContinuationConfig& cfg, const std::function<void(const BranchPoint&)>& on_point) {
    cfg.validate();
    const CosineGrid grid(cfg.P, cfg.N);
    const double xi = grid.wavenumber();
    NewtonOptions opt;
    opt.tol = cfg.newton_tol;
    opt.max_iter = cfg.max_newton;
    opt.rule = cfg.product_rule;
    opt.lambda = lambda_bound(cfg.P);

    BranchResult result;
    auto accept = [&](BranchPoint bp) {
        if (on_point) on_point(bp);
        result.points.push_back(std::move(bp));
    };

    auto first = newton_correct(expansion_wave(xi, cfg.s_start, grid), Constraint::fix_s(cfg.s_start), opt);
    ++result.newton_solves;
    if (!first.diagnostics.all_ok())
        throw BranchIntegrityError("trace_branch: first point fails " + first.diagnostics.first_failure(), first);
    accept(first);
    if (first.diagnostics.gap < cfg.stop_gap) {
        result.termination = Termination::gap_reached;
        return result;
    }

    const auto t0 = expansion_tangent(xi, cfg.s_start, grid);
    std::vector<double> tv = t0.values.data;
    double tmu = t0.mu;
    {
        const double norm = std::sqrt(arclength_dot(grid, tv, tmu, tv, tmu));
        const double sign = cfg.s_start > 0.0 ? 1.0 : -1.0;
        for (double& x : tv) x *= sign / norm;
        tmu *= sign / norm;
    }

    double ds = cfg.ds_init;
    int step = 0;
    while (true) {
        if (step >= cfg.max_steps) {
            result.termination = Termination::max_steps;
            break;
        }
        const auto& prev = result.points.back();
        std::vector<double> pv = prev.wave.values.data;
        for (std::size_t j = 0; j < pv.size(); ++j) pv[j] += ds * tv[j];
        const auto guess = PeriodicWave::from_values(grid, prev.wave.mu + ds * tmu, std::move(pv));

        std::optional<BranchPoint> bp;
        try {
            ++result.newton_solves;
            bp = newton_correct(guess, Constraint::arclength(prev.wave, tv, tmu, ds), opt);
        } catch (const DivergenceError&) {
        }
        if (!bp || !bp->diagnostics.all_ok()) {
            ++result.rejected_steps;
            ds *= 0.5;
            if (ds < cfg.ds_min) {
                if (bp) {
                    bp->step = step + 1;
                    bp->ds = 2.0 * ds;
                    throw BranchIntegrityError("trace_branch: converged point fails " +
                                                   bp->diagnostics.first_failure() + " at step " +
                                                   std::to_string(step + 1),
                                               std::move(*bp));
                }
                result.termination = Termination::step_too_small;
                break;
            }
            continue;
        }

        // Secant tangent for the next predictor.
        std::vector<double> nv(tv.size());
        for (std::size_t j = 0; j < nv.size(); ++j) nv[j] = bp->wave.values.data[j] - prev.wave.values.data[j];
        double nmu = bp->wave.mu - prev.wave.mu;
        const double dist = std::sqrt(arclength_dot(grid, nv, nmu, nv, nmu));
        for (double& x : nv) x /= dist;
        nmu /= dist;

        ++step;
        bp->step = step;
        bp->ds = ds;
        bp->arclength = prev.arclength + dist;
        bp->fold = (nmu > 0.0) != (tmu > 0.0) && nmu != 0.0 && tmu != 0.0;
        if (bp->fold) result.fold_steps.push_back(step);
        tv = std::move(nv);
        tmu = nmu;
        const int iters = bp->newton_iters;
        const double gap = bp->diagnostics.gap;
        accept(std::move(*bp));

        if (gap < cfg.stop_gap) {
            result.termination = Termination::gap_reached;
            break;
        }
        if (iters <= 3) ds = std::min(1.5 * ds, cfg.ds_max);
        else if (iters > 6) ds /= 1.5;
    }
    return result;
}

}  // namespace whitham

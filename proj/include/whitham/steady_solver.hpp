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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "whitham/errors.hpp"
#include "whitham/spectral_operator.hpp"

namespace whitham {

enum class CheckStatus { pass, fail, not_applicable };

std::string_view to_string(CheckStatus s);

/// One strict inequality; margin is the signed slack (positive when it holds).
struct Check {
    CheckStatus status = CheckStatus::not_applicable;
    double margin = 0.0;
    bool ok() const { return status != CheckStatus::fail; }
};

struct Diagnostics {
    double phi_max = 0.0;
    double phi_min = 0.0;
    double phi_trough = 0.0;  ///< phi(P/2)
    double gap = 0.0;         ///< mu/2 - max phi
    double trough_gap = 0.0;  ///< mu/2 - phi(P/2)
    double mean = 0.0;        ///< a_0
    double mean_identity_residual = 0.0;
    double lambda = 0.0;      ///< lambda_{K,P}
    double floor = 0.0;       ///< strictness floor 1e3 eps |phi|_inf

    Check monotone;             ///< phi' > 0 on (-P/2, 0): min of -phi' over interior nodes of (0, P/2)
    Check below_mu_half;        ///< phi < mu/2
    Check second_deriv_crest;   ///< phi''(0) < 0
    Check second_deriv_trough;  ///< phi''(P/2) > 0
    Check bounds;               ///< mu - 1 < phi < 1
    Check mu_range;             ///< 0 < mu < 1
    Check mu_le_2;              ///< mu <= 2
    Check mean_identity;        ///< relative residual < kMeanIdentityTol
    Check lambda_bound;         ///< mu/2 - phi(P/2) >= lambda

    bool all_ok() const;
    /// Name of the first failing check, empty if none.
    std::string first_failure() const;
};

inline constexpr double kMeanIdentityTol = 1e-8;

/// lambda <= 0 (the default) computes lambda_bound(P) (cached per P).
Diagnostics run_diagnostics(const PeriodicWave& wave, double lambda = 0.0);

/// (P/8) min {K_P(x - y) - K_P(x + y) : x, y in [-3P/8, -P/8], x != y}:
/// 65 x 65 grid, then local refinement around the grid minimum. Cached per P.
/// Throws NumericError if the minimum is not positive.
double lambda_bound(double P, Exec exec = Exec::parallel);
/// Same computation without the cache.
double lambda_bound_uncached(double P, Exec exec = Exec::parallel);

/// (phi + 1 - mu, 2 - mu).
PeriodicWave galilean_map(const PeriodicWave& wave);

struct ContinuationConfig {
    double P = 6.283185307179586;
    int N = 4096;
    double newton_tol = 1e-11;
    int max_newton = 25;
    double ds_init = 0.01;
    double ds_min = 1e-7;
    double ds_max = 0.05;
    double stop_gap = 5e-3;
    int max_steps = 500;
    double s_start = 0.01;  ///< amplitude [phi]_1 of the first point
    ProductRule product_rule = ProductRule::collocation;

    /// Throws DomainError on violated invariants.
    void validate() const;
    std::string to_json() const;
    /// Unknown keys are rejected; absent keys keep their defaults.
    static ContinuationConfig from_json(const std::string& text);
};

/// Scalar equation closing the bordered Newton system.
struct Constraint {
    enum class Kind { fix_mu, fix_s, arclength };
    Kind kind = Kind::fix_s;
    double value = 0.0;  ///< mu (fix_mu), s (fix_s) or ds (arclength)
    // arclength only: previous point and unit tangent in the (values, mu) inner product
    std::vector<double> prev_values;
    double prev_mu = 0.0;
    std::vector<double> tangent_values;
    double tangent_mu = 0.0;

    static Constraint fix_mu(double mu);
    static Constraint fix_s(double s);
    static Constraint arclength(const PeriodicWave& prev, std::vector<double> tangent_values, double tangent_mu,
                                double ds);
};

struct BranchPoint {
    PeriodicWave wave;
    double s_param = 0.0;
    double arclength = 0.0;
    Diagnostics diagnostics;
    int newton_iters = 0;
    double residual_norm = 0.0;
    double jacobian_cond = 0.0;  ///< 1 / rcond of the last bordered matrix factored
    int step = 0;
    double ds = 0.0;
    bool fold = false;  ///< mu-component of the tangent changed sign at this step
};

class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, PeriodicWave last) : NumericError(what), last_(std::move(last)) {}
    const PeriodicWave& last_iterate() const { return last_; }

private:
    PeriodicWave last_;
};

class FoldError : public NumericError {
public:
    using NumericError::NumericError;
};

class BranchIntegrityError : public InvariantError {
public:
    BranchIntegrityError(const std::string& what, BranchPoint point)
        : InvariantError(what), point_(std::move(point)) {}
    const BranchPoint& point() const { return point_; }

private:
    BranchPoint point_;
};

struct NewtonOptions {
    double tol = 1e-11;
    int max_iter = 25;
    ProductRule rule = ProductRule::collocation;
    bool diagnostics = true;
    double lambda = 0.0;  ///< forwarded to run_diagnostics
};

/// Bordered Newton on (phi, mu). Converged when |F|_inf < tol and the
/// constraint residual is below tol.
BranchPoint newton_correct(const PeriodicWave& guess, const Constraint& constraint, const NewtonOptions& opt = {});

enum class Termination { gap_reached, step_too_small, max_steps };

std::string_view to_string(Termination t);

struct BranchResult {
    std::vector<BranchPoint> points;
    Termination termination = Termination::max_steps;
    std::vector<int> fold_steps;
    int rejected_steps = 0;
    int newton_solves = 0;
};

/// Pseudo-arclength continuation from the expansion at s_start. `on_point`
/// (optional) sees every accepted point as soon as it is accepted.
BranchResult trace_branch(const ContinuationConfig& cfg,
                          const std::function<void(const BranchPoint&)>& on_point = {});

/// Weighted inner product of the continuation: trapezoid mean over the
/// half-period plus the mu product.
double arclength_dot(const CosineGrid& grid, std::span<const double> av, double amu, std::span<const double> bv,
                     double bmu);

}  // namespace whitham

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

#include "whitham/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "whitham/bifurcation.hpp"
#include "whitham/errors.hpp"
#include "whitham/kernel.hpp"
#include "whitham/periodic_kernel.hpp"
#include "whitham/regularity.hpp"
#include "whitham/steady_solver.hpp"

#ifndef WHITHAM_VERSION
#define WHITHAM_VERSION "0.0.0"
#endif

namespace whitham::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Run {
    std::string out_dir = ".";
    int threads = 0;
    long long seed = 0;
    std::string command;
    json config = json::object();
    std::vector<std::string> outputs;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    std::string path(const std::string& name) const { return (fs::path(out_dir) / name).string(); }
    void emit(const std::string& name, const std::string& content) {
        const auto p = path(name);
        write_atomic(p, content);
        outputs.push_back(p);
    }
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(Run& run, int exit_code) {
    json m;
    m["command"] = run.command;
    json cfg = run.config;
    cfg["threads"] = run.threads;
    cfg["seed"] = run.seed;
    cfg["out_dir"] = run.out_dir;
    m["config"] = cfg;
    m["tool_version"] = WHITHAM_VERSION;
    m["timestamp"] = utc_timestamp();
    m["exit_code"] = exit_code;
    m["output_files"] = run.outputs;
    write_atomic(run.path(run.command + "_manifest.json"), m.dump(2) + "\n");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// ---- kernel ---------------------------------------------------------------

struct KernelArgs {
    double from = 0.1, to = 5.0, step = 0.1, tol = 1e-12;
    std::string method = "auto";
    std::string out = "kernel.csv";
    bool cross_validate = false;
};

int cmd_kernel(Run& run, const KernelArgs& a) {
    run.config = {{"from", a.from}, {"to", a.to},         {"step", a.step},
                  {"tol", a.tol},   {"method", a.method}, {"cross_validate", a.cross_validate}};
    if (a.cross_validate) {
        double worst = 0.0;
        std::ostringstream csv;
        csv << "x,series,split,abs_diff\n";
        for (int i = 0; i < 50; ++i) {
            const double x = 0.1 * std::pow(50.0, i / 49.0);
            const double s = kernel_series(x, 1e-12).value;
            const double p = kernel_split(x, 1e-12).total();
            worst = std::max(worst, std::fabs(s - p));
            csv << fmt(x) << ',' << fmt(s) << ',' << fmt(p) << ',' << fmt(std::fabs(s - p)) << '\n';
        }
        run.emit("kernel_cross_validation.csv", csv.str());
        *run.out << "max |series - split| over 50 log-spaced x in [0.1, 5] = " << fmt(worst) << "\n";
        return worst < 1e-8 ? kExitOk : kExitInvariant;
    }
    if (!(a.from > 0.0) || !(a.to >= a.from) || !(a.step > 0.0) || !std::isfinite(a.to))
        throw UsageError("kernel: need 0 < from <= to and step > 0");
    KernelMethod forced = KernelMethod::series;
    bool use_forced = true;
    if (a.method == "auto") use_forced = false;
    else if (a.method == "series") forced = KernelMethod::series;
    else if (a.method == "split") forced = KernelMethod::split;
    else if (a.method == "asymptotic") forced = KernelMethod::asymptotic;
    else throw UsageError("kernel: unknown method " + a.method);

    const auto count = static_cast<std::size_t>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;
    if (count > 10000000) throw UsageError("kernel: too many rows");
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = a.from + static_cast<double>(i) * a.step;
    const auto rows = use_forced ? kernel_table(xs, a.tol, forced) : kernel_table(xs, a.tol);
    std::ostringstream csv;
    csv << "x,K,K',K'',method,err_est\n";
    for (const auto& r : rows)
        csv << fmt(r.x) << ',' << fmt(r.value) << ',' << fmt(r.first) << ',' << fmt(r.second) << ','
            << to_string(r.method) << ',' << fmt(r.err_est) << '\n';
    run.emit(a.out, csv.str());
    *run.out << "wrote " << rows.size() << " rows to " << run.path(a.out) << "\n";
    return kExitOk;
}

// ---- pkernel --------------------------------------------------------------

struct PKernelArgs {
    double P = 2.0 * std::numbers::pi;
    int points = 64;
    double tol = 1e-12;
    std::string method = "direct";
    std::string out = "pkernel.csv";
    bool compare = false;
    int fourier_grid = 1 << 14;
};

int cmd_pkernel(Run& run, const PKernelArgs& a) {
    run.config = {{"P", a.P},           {"points", a.points},   {"tol", a.tol},
                  {"method", a.method}, {"compare", a.compare}, {"fourier_grid", a.fourier_grid}};
    if (!(a.P > 0.0) || !std::isfinite(a.P)) throw UsageError("pkernel: P must be positive");
    if (a.points < 1) throw UsageError("pkernel: points must be >= 1");
    PKernelMethod method;
    if (a.method == "direct") method = PKernelMethod::direct_sum;
    else if (a.method == "cosh") method = PKernelMethod::cosh_formula;
    else throw UsageError("pkernel: method must be direct or cosh");

    // Nodes strictly inside (0, P).
    std::vector<double> xs(static_cast<std::size_t>(a.points));
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = a.P * (static_cast<double>(i) + 0.5) / a.points;
    const auto rows = pkernel_table(xs, a.P, a.tol, method);
    std::ostringstream csv;
    csv << "x,P,K_P,method\n";
    for (const auto& r : rows) csv << fmt(r.x) << ',' << fmt(r.P) << ',' << fmt(r.value) << ',' << to_string(r.method) << '\n';
    run.emit(a.out, csv.str());
    *run.out << "wrote " << rows.size() << " rows to " << run.path(a.out) << "\n";
    if (!a.compare) return kExitOk;

    const auto direct = pkernel_table(xs, a.P, a.tol, PKernelMethod::direct_sum);
    const auto cosh = pkernel_table(xs, a.P, a.tol, PKernelMethod::cosh_formula);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::fabs(direct[i].value - cosh[i].value));
    const auto fc = pkernel_fourier_check(a.P, a.fourier_grid, 10);
    json rep;
    rep["P"] = a.P;
    rep["direct_vs_cosh_max_abs_diff"] = worst;
    rep["fourier_grid"] = a.fourier_grid;
    rep["fourier_max_deviation_modes_0_10"] = fc.max_deviation;
    rep["fourier_mean"] = fc.mean;
    rep["fourier_deviation"] = fc.deviation;
    run.emit("pkernel_compare.json", rep.dump(2) + "\n");
    *run.out << "direct vs cosh max |diff| = " << fmt(worst) << "; Fourier modes 0-10 max deviation = "
             << fmt(fc.max_deviation) << "\n";
    return (worst < 1e-8 && fc.max_deviation < 1e-3) ? kExitOk : kExitInvariant;
}

// ---- bifurcate ------------------------------------------------------------

struct BifurcateArgs {
    double P = 0.0;
    double xi = 0.0;
    bool find_critical = false;
    std::string out = "bifurcation.json";
};

json modes_json(const std::map<int, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

int cmd_bifurcate(Run& run, const BifurcateArgs& a, bool have_P, bool have_xi) {
    run.config = {{"P", have_P ? json(a.P) : json()},
                  {"xi", have_xi ? json(a.xi) : json()},
                  {"find_critical", a.find_critical}};
    json j;
    if (have_P || have_xi || !a.find_critical) {
        if (have_P == have_xi) throw UsageError("bifurcate: give exactly one of --P and --xi");
        if (have_P && !(a.P > 0.0 && std::isfinite(a.P))) throw UsageError("bifurcate: P must be positive");
        if (have_xi && !(a.xi > 0.0 && std::isfinite(a.xi))) throw UsageError("bifurcate: xi must be positive");
        const double xi = have_xi ? a.xi : 2.0 * std::numbers::pi / a.P;
        const auto e = expansion_coeffs(xi);
        j["xi"] = e.xi;
        j["mu0"] = e.mu0;
        j["mu2"] = e.mu2;
        j["mu4"] = e.mu4;
        j["phi2"] = modes_json(e.phi2);
        j["phi3"] = modes_json(e.phi3);
        j["phi4"] = modes_json(e.phi4);
    }
    if (a.find_critical) {
        const auto c = find_xi0();
        j["critical"] = {{"xi0", c.xi0}, {"P0", c.P0}, {"mu4", c.mu4}};
    }
    run.emit(a.out, j.dump(2) + "\n");
    *run.out << j.dump(2) << "\n";
    return kExitOk;
}

// ---- branch ---------------------------------------------------------------

json margins_json(const Diagnostics& d) {
    auto c = [](const Check& k) { return json{{"status", to_string(k.status)}, {"margin", k.margin}}; };
    return json{{"monotone", c(d.monotone)},
                {"below_mu_half", c(d.below_mu_half)},
                {"second_deriv_crest", c(d.second_deriv_crest)},
                {"second_deriv_trough", c(d.second_deriv_trough)},
                {"bounds", c(d.bounds)},
                {"mu_range", c(d.mu_range)},
                {"mu_le_2", c(d.mu_le_2)},
                {"mean_identity", c(d.mean_identity)},
                {"lambda_bound", c(d.lambda_bound)}};
}

json diagnostics_json(const Diagnostics& d) {
    return json{{"phi_max", d.phi_max},
                {"phi_min", d.phi_min},
                {"phi_trough", d.phi_trough},
                {"gap", d.gap},
                {"trough_gap", d.trough_gap},
                {"mean", d.mean},
                {"mean_identity_residual", d.mean_identity_residual},
                {"lambda", d.lambda},
                {"floor", d.floor},
                {"all_ok", d.all_ok()},
                {"margins", margins_json(d)}};
}

json point_json(const BranchPoint& p, const std::string& coeffs_file) {
    return json{{"step", p.step},
                {"s_param", p.s_param},
                {"mu", p.wave.mu},
                {"gap", p.diagnostics.gap},
                {"phi_max", p.diagnostics.phi_max},
                {"phi_trough", p.diagnostics.phi_trough},
                {"margins", margins_json(p.diagnostics)},
                {"coeffs_file", coeffs_file},
                {"arclength", p.arclength},
                {"ds", p.ds},
                {"newton_iters", p.newton_iters},
                {"residual_norm", p.residual_norm},
                {"jacobian_cond", p.jacobian_cond},
                {"mean_identity_residual", p.diagnostics.mean_identity_residual},
                {"fold", p.fold}};
}

json fit_json(const CuspFit& f) {
    return json{{"window_lo", f.window.x_lo},         {"window_hi", f.window.x_hi},
                {"alpha_pointwise", f.alpha_pointwise}, {"C_pointwise", f.C_pointwise},
                {"alpha_spectral", f.alpha_spectral},   {"r2_pointwise", f.r2_pointwise},
                {"r2_spectral", f.r2_spectral},         {"k_lo", f.k_lo},
                {"k_hi", f.k_hi},                       {"gap", f.gap},
                {"C_conjecture", std::sqrt(std::numbers::pi / 8.0)},
                {"warning", f.warning}};
}

int cmd_branch(Run& run, const std::string& config_path) {
    if (config_path.empty()) throw UsageError("branch: --config is required");
    if (!fs::exists(config_path)) throw UsageError("branch: config file not found: " + config_path);
    const auto cfg = ContinuationConfig::from_json(read_file(config_path));
    run.config = json::parse(cfg.to_json());
    run.config["config_file"] = config_path;

    std::string log;
    auto wave_name = [](int step) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "waves/point_%05d.json", step);
        return std::string(buf);
    };
    auto on_point = [&](const BranchPoint& p) {
        const auto name = wave_name(p.step);
        run.emit(name, wave_to_json(p.wave) + "\n");
        log += point_json(p, name).dump() + "\n";
        *run.out << "step " << p.step << "  mu " << fmt(p.wave.mu) << "  gap " << fmt(p.diagnostics.gap) << "\n";
    };

    BranchResult result;
    try {
        result = trace_branch(cfg, on_point);
    } catch (const BranchIntegrityError& e) {
        json bad = point_json(e.point(), "");
        bad["diagnostics"] = diagnostics_json(e.point().diagnostics);
        bad["error"] = e.what();
        run.emit("branch.jsonl", log);
        run.emit("branch_failure.json", bad.dump(2) + "\n");
        *run.err << e.what() << "\n";
        return kExitInvariant;
    }
    run.emit("branch.jsonl", log);

    const auto& last = result.points.back();
    json summary;
    summary["termination"] = to_string(result.termination);
    summary["accepted_points"] = result.points.size();
    summary["rejected_steps"] = result.rejected_steps;
    summary["newton_solves"] = result.newton_solves;
    summary["fold_steps"] = result.fold_steps;
    summary["P"] = cfg.P;
    summary["N"] = cfg.N;
    summary["stop_gap"] = cfg.stop_gap;
    summary["mu_star"] = bifurcation_point(cfg.P, 1);
    summary["first_mu"] = result.points.front().wave.mu;
    summary["terminal"] = {{"step", last.step},
                           {"mu", last.wave.mu},
                           {"gap", last.diagnostics.gap},
                           {"coeffs_file", wave_name(last.step)},
                           {"diagnostics", diagnostics_json(last.diagnostics)}};
    try {
        summary["terminal"]["cusp_fit"] = fit_json(fit_cusp(last.wave));
    } catch (const std::exception& e) {
        summary["terminal"]["cusp_fit"] = {{"error", e.what()}};
    }
    run.emit("branch_summary.json", summary.dump(2) + "\n");
    *run.out << "termination: " << to_string(result.termination) << ", terminal gap " << fmt(last.diagnostics.gap)
             << "\n";
    return kExitOk;
}

// ---- analyze --------------------------------------------------------------

int cmd_analyze(Run& run, const std::string& wave_path, const std::string& out_name) {
    if (wave_path.empty()) throw UsageError("analyze: --wave is required");
    run.config = {{"wave", wave_path}, {"out", out_name}};
    const auto wave = wave_from_json(read_file(wave_path));
    const auto d = run_diagnostics(wave);
    json rep;
    rep["P"] = wave.grid.period();
    rep["N"] = wave.grid.modes();
    rep["mu"] = wave.mu;
    rep["residual_norm"] = sup_norm(residual(wave).data);
    rep["diagnostics"] = diagnostics_json(d);

    std::ostringstream csv;
    csv << "window_lo,window_hi,alpha_pointwise,C_pointwise,alpha_spectral,r2_pointwise,r2_spectral\n";
    try {
        const auto f = fit_cusp(wave);
        csv << fmt(f.window.x_lo) << ',' << fmt(f.window.x_hi) << ',' << fmt(f.alpha_pointwise) << ','
            << fmt(f.C_pointwise) << ',' << fmt(f.alpha_spectral) << ',' << fmt(f.r2_pointwise) << ','
            << fmt(f.r2_spectral) << '\n';
        rep["cusp_fit"] = fit_json(f);
        const double x0[] = {-wave.grid.period() / 8.0};
        const auto lb = lower_bound_check(wave, x0);
        rep["lower_bound"] = {{"x0", lb[0].x0}, {"bound", lb[0].bound}, {"min_gap", lb[0].min_gap},
                              {"slack", lb[0].slack}, {"ok", lb[0].ok}};
    } catch (const std::exception& e) {
        // A constant or smooth profile has no cusp to fit; the diagnostics still stand.
        rep["cusp_fit"] = {{"error", e.what()}};
    }
    run.emit(out_name, csv.str());
    run.emit("analysis.json", rep.dump(2) + "\n");
    *run.out << rep.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Run r;
    r.out = &out;
    r.err = &err;

    CLI::App app{"Whitham kernel evaluation, bifurcation and steady-wave continuation"};
    app.set_version_flag("--version", WHITHAM_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", r.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out-dir", r.out_dir, "Directory for output files");
    app.add_option("--seed", r.seed, "Reserved; no stochastic component");

    KernelArgs ka;
    auto* k = app.add_subcommand("kernel", "Tabulate K, K', K''");
    k->add_option("--from", ka.from);
    k->add_option("--to", ka.to);
    k->add_option("--step", ka.step);
    k->add_option("--tol", ka.tol);
    k->add_option("--method", ka.method, "auto|series|split|asymptotic");
    k->add_option("--out", ka.out);
    k->add_flag("--cross-validate", ka.cross_validate, "Series vs split on 50 log-spaced points");

    PKernelArgs pa;
    auto* p = app.add_subcommand("pkernel", "Tabulate the periodized kernel");
    p->add_option("--P", pa.P);
    p->add_option("--points", pa.points);
    p->add_option("--tol", pa.tol);
    p->add_option("--method", pa.method, "direct|cosh");
    p->add_option("--out", pa.out);
    p->add_flag("--compare", pa.compare, "Direct vs cosh vs Fourier report");
    p->add_option("--fourier-grid", pa.fourier_grid);

    BifurcateArgs ba;
    auto* b = app.add_subcommand("bifurcate", "Local bifurcation expansion");
    auto* bP = b->add_option("--P", ba.P);
    auto* bxi = b->add_option("--xi", ba.xi);
    b->add_flag("--find-critical", ba.find_critical);
    b->add_option("--out", ba.out);

    std::string config_path;
    auto* br = app.add_subcommand("branch", "Trace the main branch");
    br->add_option("--config", config_path, "ContinuationConfig JSON");

    std::string wave_path, analyze_out = "analysis.csv";
    auto* an = app.add_subcommand("analyze", "Diagnostics and cusp fit of a stored wave");
    an->add_option("--wave", wave_path);
    an->add_option("--out", analyze_out);

    std::vector<std::string> argv_store{"whitham"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (r.threads > 0) set_num_threads(r.threads);
    int code = kExitOk;
    bool ran = false;
    try {
        if (k->parsed()) {
            r.command = "kernel";
            ran = true;
            code = cmd_kernel(r, ka);
        } else if (p->parsed()) {
            r.command = "pkernel";
            ran = true;
            code = cmd_pkernel(r, pa);
        } else if (b->parsed()) {
            r.command = "bifurcate";
            ran = true;
            code = cmd_bifurcate(r, ba, bP->count() > 0, bxi->count() > 0);
        } else if (br->parsed()) {
            r.command = "branch";
            ran = true;
            code = cmd_branch(r, config_path);
        } else if (an->parsed()) {
            r.command = "analyze";
            ran = true;
            code = cmd_analyze(r, wave_path, analyze_out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const DomainError& e) {
        err << "invalid argument: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const RangeError& e) {
        err << "out of range: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << "\n";
        code = kExitInvariant;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        code = kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        code = kExitNumeric;
    }
    if (ran) {
        try {
            write_manifest(r, code);
        } catch (const std::exception& e) {
            err << "cannot write manifest: " << e.what() << "\n";
            if (code == kExitOk) code = kExitNumeric;
        }
    }
    return code;
}

}  // namespace whitham::cli

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

// Serial reference vs OpenMP paths of the data-parallel loops.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "whitham/exec.hpp"
#include "whitham/kernel.hpp"
#include "whitham/periodic_kernel.hpp"
#include "whitham/spectral_operator.hpp"
#include "whitham/steady_solver.hpp"

using namespace whitham;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel"); }

void BM_KernelTable(benchmark::State& st) {
    std::vector<double> xs(256);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.01 * std::pow(1000.0, i / 255.0);
    for (auto _ : st) benchmark::DoNotOptimize(kernel_table(xs, 1e-12, exec_of(st)));
    label(st);
}
BENCHMARK(BM_KernelTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PKernelTable(benchmark::State& st) {
    const double P = 2.0 * std::numbers::pi;
    std::vector<double> xs(512);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = P * (static_cast<double>(i) + 0.5) / 512.0;
    for (auto _ : st) benchmark::DoNotOptimize(pkernel_table(xs, P, 1e-12, PKernelMethod::direct_sum, exec_of(st)));
    label(st);
}
BENCHMARK(BM_PKernelTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FourierCheck(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(pkernel_fourier_check(2.0 * std::numbers::pi, 1 << 12, 10, 1e-11, exec_of(st)));
    label(st);
}
BENCHMARK(BM_FourierCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LambdaBound(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(lambda_bound_uncached(2.0 * std::numbers::pi, exec_of(st)));
    label(st);
}
BENCHMARK(BM_LambdaBound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LMatrix(benchmark::State& st) {
    for (auto _ : st) {
        const CosineGrid g(2.0 * std::numbers::pi, 1024);  // fresh grid: the matrix is built once per grid
        benchmark::DoNotOptimize(g.L_matrix(exec_of(st)).data());
    }
    label(st);
}
BENCHMARK(BM_LMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Jacobian(benchmark::State& st) {
    const CosineGrid g(2.0 * std::numbers::pi, 1024);
    std::vector<double> a(g.size(), 0.0);
    a[1] = 0.05;
    const auto w = PeriodicWave::from_coeffs(g, 0.85, a);
    g.L_matrix();
    for (auto _ : st) benchmark::DoNotOptimize(jacobian(w, ProductRule::collocation, exec_of(st)));
    label(st);
}
BENCHMARK(BM_Jacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

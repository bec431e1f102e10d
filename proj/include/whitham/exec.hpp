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

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace whitham {

/// Execution policy for the data-parallel loops. `serial` is the reference
/// path kept for testing; both paths write results by index, so they agree
/// bit for bit.
enum class Exec { serial, parallel };

/// Sets the OpenMP thread count (no-op without OpenMP). Values < 1 are ignored.
void set_num_threads(int n);
int max_threads();

/// Runs body(i) for i in [0, n). The parallel path uses a dynamic schedule
/// since per-index cost varies a lot (band counts grow like 1/|x|).
/// Exceptions thrown inside the parallel region are captured and the first
/// one is rethrown on the calling thread.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex guard;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace whitham

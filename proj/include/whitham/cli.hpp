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

#include <iosfwd>
#include <string>
#include <vector>

namespace whitham::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one command line (args excludes the program name). Output files go
/// under --out-dir; messages go to out/err. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g".
std::string fmt(double x);

/// Writes `content` to `path` via a temporary file and rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace whitham::cli

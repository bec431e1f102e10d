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

#include <stdexcept>
#include <string>

namespace whitham {

/// Argument outside the mathematical domain of an operation (x = 0 for a
/// singular kernel, negative lambda, non power-of-two grid, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument valid in principle but outside the range a particular evaluation
/// route supports; the message names the route to use instead.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Numerical failure: quadrature did not reach tolerance, overflow guard
/// tripped, a root bracket lost its sign change.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematically guaranteed property was observed to fail on computed data.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace whitham

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

namespace whitham {

/// Laplace-type weight w(s) = (exp(-s d1) [+ exp(-s d2)]) / (1 - exp(-s P)),
/// the denominator being absent when P == 0. Covers both the line kernel
/// (one exponential) and the cosh/sinh ratio of the periodic kernel.
struct BandWeight {
    double d1 = 0.0;
    double d2 = 0.0;
    bool two_terms = false;
    double period = 0.0;

    static BandWeight exponential(double d) { return BandWeight{d, 0.0, false, 0.0}; }
    /// cosh(s(P/2 - d)) / sinh(sP/2) rewritten with decaying exponentials.
    static BandWeight periodic(double d, double P) { return BandWeight{d, P - d, true, P}; }
};

struct BandSum {
    double value = 0.0;
    double err_est = 0.0;
    int bands = 0;
};

/// sum_n int_{(2n-1)pi/2}^{n pi} w(s) s^order sqrt(|tan s| / s) ds.
///
/// Band n is mapped to theta in [0, pi/2] by s = a_n + (pi/2) sin^2(theta);
/// with cos t written as sin((pi/2) cos^2 theta) the integrand is analytic
/// and free of cancellation at both ends. 32 and 64 point rules; the band is
/// split into theta panels when they disagree by more than its share of tol.
/// Requires d1 > 0 (and d2 > 0 when two_terms).
BandSum laplace_band_sum(const BandWeight& w, int order, double tol);

}  // namespace whitham

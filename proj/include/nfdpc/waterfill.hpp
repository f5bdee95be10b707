// SPDX-License-Identifier: Apache-2.0
//
// nfdpc - zero-forcing and dirty-paper-coding precoding for near-field MISO
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFDPC_WATERFILL_HPP
#define NFDPC_WATERFILL_HPP

#include <cstddef>
#include <vector>

namespace nfdpc {

/// Separable power allocation problem
///
///     maximize   sum_k log2(1 + g_k q_k)
///     subject to sum_k c_k q_k <= budget,  q >= 0.
///
/// Zero forcing uses g_k = 1 / sigma^2 and c_k = alpha_k; QR-based DPC uses
/// g_k = r_kk^2 / sigma^2 and c_k = 1.
struct WaterfillProblem {
    std::vector<double> gains;
    std::vector<double> weights;
    double budget = 0.0;
    /// Gains below this fraction of the largest gain are treated as zero, so that
    /// nearly rank-deficient channels do not produce 1/g overflow.
    double zero_gain_threshold = 1e-15;

    void validate() const;
};

struct PowerAllocation {
    std::vector<double> q;     ///< per-user power
    std::vector<double> rates; ///< log2(1 + g_k q_k), bits per channel use
    double sum_rate = 0.0;
    /// Lagrange multiplier lambda*, defined by q_k = [1/(lambda* c_k) - 1/g_k]_+.
    /// Infinite when no user has a usable gain.
    double water_level_dual = 0.0;
    std::size_t active_users = 0;
};

/// Exact active-set water-filling. Users are sorted by c_k / g_k; the water
/// level of the largest feasible prefix A is 1/lambda = (P + sum_A c_k/g_k) / |A|.
/// Throws ValidationError on empty, mismatched, negative or non-finite input.
PowerAllocation solve_waterfill(const WaterfillProblem& problem);

} // namespace nfdpc

#endif

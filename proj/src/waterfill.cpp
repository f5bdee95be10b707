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

#include "nfdpc/waterfill.hpp"

#include "nfdpc/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace nfdpc {

void WaterfillProblem::validate() const {
    if (gains.empty())
        throw ValidationError("waterfill: empty problem");
    if (gains.size() != weights.size())
        throw ValidationError("waterfill: gains and weights differ in length");
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw ValidationError("waterfill: budget must be positive and finite");
    for (std::size_t k = 0; k < gains.size(); ++k) {
        if (!std::isfinite(gains[k]) || gains[k] < 0.0)
            throw ValidationError("waterfill: gain " + std::to_string(k) + " must be finite and non-negative");
        if (!std::isfinite(weights[k]) || !(weights[k] > 0.0))
            throw ValidationError("waterfill: weight " + std::to_string(k) + " must be finite and positive");
    }
    if (!(zero_gain_threshold >= 0.0))
        throw ValidationError("waterfill: zero_gain_threshold must be non-negative");
}

PowerAllocation solve_waterfill(const WaterfillProblem& problem) {
    problem.validate();
    const std::size_t n = problem.gains.size();

    PowerAllocation out;
    out.q.assign(n, 0.0);
    out.rates.assign(n, 0.0);
    out.water_level_dual = std::numeric_limits<double>::infinity();

    const double g_max = *std::max_element(problem.gains.begin(), problem.gains.end());
    const double cutoff = problem.zero_gain_threshold * g_max;

    // Usable users in order of increasing activation threshold c_k / g_k.
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k)
        if (problem.gains[k] > 0.0 && problem.gains[k] > cutoff)
            order.push_back(k);
    if (order.empty())
        return out;

    std::vector<double> threshold(n, 0.0);
    for (std::size_t k : order)
        threshold[k] = problem.weights[k] / problem.gains[k];
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return threshold[a] < threshold[b]; });

    // Thresholds are sorted, so the active set is a prefix. The first user is always
    // active; extend while the prefix's water level stays above the next threshold.
    double prefix = 0.0;
    double level = 0.0;
    std::size_t active = 0;
    for (std::size_t m = 0; m < order.size(); ++m) {
        const double candidate_prefix = prefix + threshold[order[m]];
        const double candidate_level = (problem.budget + candidate_prefix) / static_cast<double>(m + 1);
        if (m > 0 && !(candidate_level > threshold[order[m]]))
            break;
        prefix = candidate_prefix;
        level = candidate_level;
        active = m + 1;
    }

    // c_k q_k = level - t_k, written as a sum of threshold differences so equal
    // thresholds cancel exactly instead of losing digits against a large level.
    for (std::size_t i = 0; i < active; ++i) {
        const std::size_t k = order[i];
        double excess = 0.0;
        for (std::size_t j = 0; j < active; ++j)
            excess += threshold[order[j]] - threshold[k];
        const double spend = (problem.budget + excess) / static_cast<double>(active);
        out.q[k] = std::max(0.0, spend / problem.weights[k]);
    }
    for (std::size_t k = 0; k < n; ++k)
        out.rates[k] = std::log1p(problem.gains[k] * out.q[k]) / std::numbers::ln2;
    out.sum_rate = std::accumulate(out.rates.begin(), out.rates.end(), 0.0);
    out.water_level_dual = 1.0 / level;
    out.active_users = active;
    return out;
}

} // namespace nfdpc

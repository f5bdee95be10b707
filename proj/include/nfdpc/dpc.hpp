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

#ifndef NFDPC_DPC_HPP
#define NFDPC_DPC_HPP

#include "nfdpc/channel.hpp"
#include "nfdpc/waterfill.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nfdpc {

/// DPC encoding order. Slot k (0-based) holds the user encoded k-th; users are
/// 0-based internally and printed 1-based by label().
class EncodingOrder {
public:
    EncodingOrder() = default;
    /// Throws ValidationError unless `users` is a permutation of 0..K-1.
    explicit EncodingOrder(std::vector<std::size_t> users);

    static EncodingOrder identity(std::size_t k);
    /// Parses a 1-based label such as "2-1".
    static EncodingOrder parse(std::string_view label);

    std::size_t size() const { return users_.size(); }
    std::size_t operator[](std::size_t slot) const { return users_[slot]; }
    std::size_t slot_of(std::size_t user) const;
    const std::vector<std::size_t>& users() const { return users_; }
    /// 1-based, dash separated: "1-2".
    std::string label() const;

    friend bool operator==(const EncodingOrder&, const EncodingOrder&) = default;

private:
    std::vector<std::size_t> users_;
};

/// Thin QR of the row-permuted channel, H_pi^H = Q R, with real non-negative
/// diagonal of R.
struct DpcDecomposition {
    EncodingOrder order;
    CMatrix q_basis;                 ///< N x K, orthonormal columns; the DPC precoder
    CMatrix r_upper;                 ///< K x K upper triangular
    std::vector<double> diag_gains;  ///< r_kk^2 in encoding (slot) order
};

struct DpcSolution {
    DpcDecomposition decomposition;
    PowerAllocation allocation;  ///< indexed by encoding slot
    double sum_rate = 0.0;

    const EncodingOrder& order() const { return decomposition.order; }
    /// Powers and rates re-indexed by natural user index.
    std::vector<double> user_powers() const;
    std::vector<double> user_rates() const;
};

DpcDecomposition decompose(const ChannelMatrix& h, const EncodingOrder& order);

/// r_kk^2 in slot order for `order`, without forming Q. Bitwise identical to
/// decompose(h, order).diag_gains.
std::vector<double> ordered_gains(const ChannelMatrix& h, const EncodingOrder& order);

/// Water-filling over the effective gains r_kk^2 / noise_power with a plain
/// sum-power budget (Q preserves transmit power).
DpcSolution dpc_sum_rate(const ChannelMatrix& h, const EncodingOrder& order, double pt, double noise_power = 1.0);

struct ExhaustiveOptions {
    std::size_t max_users = 8;
    /// Orderings whose sum rates differ by at most this relative amount are ties;
    /// ties go to the lexicographically smallest permutation.
    double tie_tolerance = 1e-12;
};

/// Best of all K! orderings. Throws CapExceededError above options.max_users.
DpcSolution best_order_exhaustive(const ChannelMatrix& h, double pt, double noise_power = 1.0,
                                  const ExhaustiveOptions& options = {});

/// Users by descending |h_k|^2, ties by ascending index.
EncodingOrder greedy_order(const ChannelMatrix& h);

DpcSolution best_order_greedy(const ChannelMatrix& h, double pt, double noise_power = 1.0);

} // namespace nfdpc

#endif

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

#ifndef NFDPC_ZF_HPP
#define NFDPC_ZF_HPP

#include "nfdpc/channel.hpp"
#include "nfdpc/waterfill.hpp"

#include <vector>

namespace nfdpc {

struct ZfOptions {
    // build_zf refuses Gram matrices whose 2-norm condition number exceeds this.
    double max_condition = 1e12;
};

struct ZfPrecoder {
    CMatrix f;                  // N x K, F = H^H (H H^H)^-1
    std::vector<double> alpha;  // alpha_k = |f_k|^2, transmit power cost per unit symbol power
    double condition_estimate = 0.0; // cond(H H^H)
};

// Pseudo-inverse precoder via an LDLT solve against the K x K Gram matrix.
// Throws RankDeficientError when cond(H H^H) exceeds options.max_condition,
// ValidationError when K > N.
ZfPrecoder build_zf(const ChannelMatrix& h, const ZfOptions& options = {});

// Optimal ZF power allocation: unit effective gains (scaled by 1/noise_power),
// power weights alpha_k, budget pt.
PowerAllocation zf_allocate(const ZfPrecoder& zf, double pt, double noise_power = 1.0);

PowerAllocation zf_sum_rate(const ChannelMatrix& h, double pt, double noise_power = 1.0,
                            const ZfOptions& options = {});

} // namespace nfdpc

#endif

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

#include "nfdpc/zf.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <string>

namespace nfdpc {

namespace {

double gram_condition(const CMatrix& gram) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        return std::numeric_limits<double>::infinity();
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || !(hi > 0.0))
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace

ZfPrecoder build_zf(const ChannelMatrix& h, const ZfOptions& options) {
    if (h.users() > h.antennas())
        throw ValidationError("zf: needs K <= N (K=" + std::to_string(h.users()) +
                              ", N=" + std::to_string(h.antennas()) + ")");

    const CMatrix gram = channel_gram(h);
    const double cond = gram_condition(gram);
    if (!(cond <= options.max_condition))
        throw RankDeficientError("zf: H H^H is rank deficient (condition " + std::to_string(cond) + ")", cond);

    // X = G^-1 H is K x N and F = X^H. One refinement step on the residual
    // H - G X recovers most of the accuracy lost to the Gram squaring.
    const Eigen::LDLT<CMatrix> ldlt(gram);
    if (ldlt.info() != Eigen::Success)
        throw RankDeficientError("zf: Gram factorisation failed", cond);
    const CMatrix& rhs = h.entries();
    CMatrix x = ldlt.solve(rhs);
    const CMatrix residual = rhs - gram * x;
    x += ldlt.solve(residual);

    ZfPrecoder out;
    out.f = x.adjoint();
    out.condition_estimate = cond;
    out.alpha.resize(h.users());
    for (std::size_t k = 0; k < h.users(); ++k) {
        out.alpha[k] = out.f.col(static_cast<Eigen::Index>(k)).squaredNorm();
        if (!(out.alpha[k] > 0.0) || !std::isfinite(out.alpha[k]))
            throw RankDeficientError("zf: non-finite precoder column", cond);
    }
    return out;
}

PowerAllocation zf_allocate(const ZfPrecoder& zf, double pt, double noise_power) {
    if (!(noise_power > 0.0))
        throw ValidationError("zf: noise_power must be positive");
    WaterfillProblem p;
    p.gains.assign(zf.alpha.size(), 1.0 / noise_power);
    p.weights = zf.alpha;
    p.budget = pt;
    return solve_waterfill(p);
}

PowerAllocation zf_sum_rate(const ChannelMatrix& h, double pt, double noise_power, const ZfOptions& options) {
    return zf_allocate(build_zf(h, options), pt, noise_power);
}

} // namespace nfdpc

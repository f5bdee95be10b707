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

#include "nfdpc/dpc.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace nfdpc {

EncodingOrder::EncodingOrder(std::vector<std::size_t> users) : users_(std::move(users)) {
    std::vector<bool> seen(users_.size(), false);
    for (std::size_t u : users_) {
        if (u >= users_.size() || seen[u])
            throw ValidationError("encoding order: not a permutation of the users");
        seen[u] = true;
    }
}

EncodingOrder EncodingOrder::identity(std::size_t k) {
    std::vector<std::size_t> users(k);
    std::iota(users.begin(), users.end(), std::size_t{0});
    return EncodingOrder(std::move(users));
}

EncodingOrder EncodingOrder::parse(std::string_view label) {
    std::vector<std::size_t> users;
    std::size_t pos = 0;
    while (pos <= label.size()) {
        const std::size_t end = std::min(label.find('-', pos), label.size());
        const std::string_view part = label.substr(pos, end - pos);
        std::size_t value = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || res.ec != std::errc{} || res.ptr != part.data() + part.size() || value == 0)
            throw ValidationError("encoding order: cannot parse '" + std::string(label) + "'");
        users.push_back(value - 1);
        pos = end + 1;
    }
    return EncodingOrder(std::move(users));
}

std::size_t EncodingOrder::slot_of(std::size_t user) const {
    const auto it = std::find(users_.begin(), users_.end(), user);
    if (it == users_.end())
        throw ValidationError("encoding order: unknown user");
    return static_cast<std::size_t>(it - users_.begin());
}

std::string EncodingOrder::label() const {
    std::string out;
    for (std::size_t i = 0; i < users_.size(); ++i) {
        if (i) out.push_back('-');
        out += std::to_string(users_[i] + 1);
    }
    return out;
}

std::vector<double> DpcSolution::user_powers() const {
    std::vector<double> out(order().size());
    for (std::size_t slot = 0; slot < out.size(); ++slot)
        out[order()[slot]] = allocation.q[slot];
    return out;
}

std::vector<double> DpcSolution::user_rates() const {
    std::vector<double> out(order().size());
    for (std::size_t slot = 0; slot < out.size(); ++slot)
        out[order()[slot]] = allocation.rates[slot];
    return out;
}

namespace {

void check_shape(const ChannelMatrix& h, const EncodingOrder& order) {
    if (order.size() != h.users())
        throw ValidationError("dpc: encoding order has " + std::to_string(order.size()) + " users, channel has " +
                              std::to_string(h.users()));
    if (h.users() > h.antennas())
        throw ValidationError("dpc: needs K <= N");
}

// Householder QR of H_pi^H (N x K); column k is the conjugated channel of the
// user in slot k.
Eigen::HouseholderQR<CMatrix> factor(const ChannelMatrix& h, const EncodingOrder& order) {
    check_shape(h, order);
    const auto k = static_cast<Eigen::Index>(h.users());
    CMatrix a(static_cast<Eigen::Index>(h.antennas()), k);
    for (Eigen::Index slot = 0; slot < k; ++slot)
        a.col(slot) = h.entries().row(static_cast<Eigen::Index>(order[slot])).adjoint();
    return Eigen::HouseholderQR<CMatrix>(std::move(a));
}

std::vector<double> gains_of(const Eigen::HouseholderQR<CMatrix>& qr) {
    const auto k = qr.matrixQR().cols();
    std::vector<double> g(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i)
        g[static_cast<std::size_t>(i)] = std::norm(qr.matrixQR()(i, i));
    return g;
}

PowerAllocation allocate(const std::vector<double>& gains, double pt, double noise_power) {
    if (!(noise_power > 0.0))
        throw ValidationError("dpc: noise_power must be positive");
    WaterfillProblem p;
    p.gains.resize(gains.size());
    std::transform(gains.begin(), gains.end(), p.gains.begin(), [&](double g) { return g / noise_power; });
    p.weights.assign(gains.size(), 1.0);
    p.budget = pt;
    return solve_waterfill(p);
}

} // namespace

std::vector<double> ordered_gains(const ChannelMatrix& h, const EncodingOrder& order) {
    return gains_of(factor(h, order));
}

DpcDecomposition decompose(const ChannelMatrix& h, const EncodingOrder& order) {
    const auto qr = factor(h, order);
    const Eigen::Index n = qr.matrixQR().rows();
    const Eigen::Index k = qr.matrixQR().cols();

    DpcDecomposition out;
    out.order = order;
    out.diag_gains = gains_of(qr);
    out.r_upper = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    out.q_basis = qr.householderQ() * CMatrix::Identity(n, k);

    // Rotate each (column of Q, row of R) pair so that r_kk is real and >= 0.
    for (Eigen::Index i = 0; i < k; ++i) {
        const Complex r = out.r_upper(i, i);
        const double mag = std::abs(r);
        if (mag > 0.0) {
            const Complex phase = r / mag;
            out.r_upper.row(i) *= std::conj(phase);
            out.q_basis.col(i) *= phase;
        }
        out.r_upper(i, i) = Complex(mag, 0.0);
    }
    return out;
}

DpcSolution dpc_sum_rate(const ChannelMatrix& h, const EncodingOrder& order, double pt, double noise_power) {
    DpcSolution out;
    out.decomposition = decompose(h, order);
    out.allocation = allocate(out.decomposition.diag_gains, pt, noise_power);
    out.sum_rate = out.allocation.sum_rate;
    return out;
}

DpcSolution best_order_exhaustive(const ChannelMatrix& h, double pt, double noise_power,
                                  const ExhaustiveOptions& options) {
    const std::size_t k = h.users();
    if (k > options.max_users)
        throw CapExceededError("dpc: exhaustive ordering search is capped at K=" + std::to_string(options.max_users) +
                               " (K=" + std::to_string(k) + "); use the greedy ordering");

    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best_perm = perm;
    double best_rate = -std::numeric_limits<double>::infinity();
    // Lexicographic enumeration: a later permutation must win by more than the tie
    // tolerance to replace the incumbent.
    do {
        const double rate = allocate(ordered_gains(h, EncodingOrder(perm)), pt, noise_power).sum_rate;
        if (rate > best_rate + options.tie_tolerance * std::max(1.0, std::abs(best_rate)) ||
            best_rate == -std::numeric_limits<double>::infinity()) {
            best_rate = rate;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return dpc_sum_rate(h, EncodingOrder(std::move(best_perm)), pt, noise_power);
}

EncodingOrder greedy_order(const ChannelMatrix& h) {
    const auto norms = h.row_norms_squared();
    std::vector<std::size_t> users(h.users());
    std::iota(users.begin(), users.end(), std::size_t{0});
    std::stable_sort(users.begin(), users.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    return EncodingOrder(std::move(users));
}

DpcSolution best_order_greedy(const ChannelMatrix& h, double pt, double noise_power) {
    return dpc_sum_rate(h, greedy_order(h), pt, noise_power);
}

} // namespace nfdpc

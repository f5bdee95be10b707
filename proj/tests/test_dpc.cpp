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
#include "nfdpc/zf.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace nfdpc;

namespace {

std::vector<EncodingOrder> all_orders(std::size_t k) {
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::vector<EncodingOrder> out;
    do out.emplace_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

double product(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 1.0, std::multiplies<>());
}

CRowMatrix orthogonal_rows(const std::vector<double>& norms, std::size_t n) {
    CRowMatrix e = CRowMatrix::Zero(norms.size(), n);
    for (std::size_t k = 0; k < norms.size(); ++k) e(k, k) = std::polar(norms[k], 0.3 * k + 0.1);
    return e;
}

} // namespace

TEST_CASE("EncodingOrder") {
    const auto o = EncodingOrder::parse("2-3-1");
    CHECK(o.users() == std::vector<std::size_t>{1, 2, 0});
    CHECK(o.label() == "2-3-1");
    CHECK(o.slot_of(0) == 2);
    CHECK(EncodingOrder::identity(3).label() == "1-2-3");
    CHECK_THROWS_AS(EncodingOrder({0, 0}), ValidationError);
    CHECK_THROWS_AS(EncodingOrder({1, 2}), ValidationError);
    CHECK_THROWS_AS(EncodingOrder::parse("1-x"), ValidationError);
    CHECK_THROWS_AS(EncodingOrder::parse("0-1"), ValidationError);
}

TEST_CASE("orthogonal rows: diagonal gains are the row norms in slot order") {
    const auto h = ChannelMatrix(orthogonal_rows({1.5, 0.5, 2.0}, 5));
    for (const auto& o : all_orders(3)) {
        const auto g = decompose(h, o).diag_gains;
        for (std::size_t s = 0; s < 3; ++s) CHECK(g[s] == doctest::Approx(h.row_norm_squared(o[s])).epsilon(1e-14));
    }
}

TEST_CASE("single user gain is the squared norm") {
    std::mt19937_64 rng(2);
    const auto h = oracle::random_channel(rng, 1, 7);
    CHECK(decompose(h, EncodingOrder::identity(1)).diag_gains[0] ==
          doctest::Approx(h.row_norm_squared(0)).epsilon(1e-14));
}

TEST_CASE("coincident users leave the second gain at zero") {
    ScenarioConfig sc;
    sc.array = ArrayConfig::square(10);
    sc.layout = UserLayout::coplanar(10, 0);
    const auto h = build_channel(sc);
    const auto g = decompose(h, EncodingOrder::identity(2)).diag_gains;
    CHECK(g[0] == doctest::Approx(h.row_norm_squared(0)).epsilon(1e-13));
    CHECK(g[1] <= 1e-10 * h.row_norm_squared(0));
    const auto sol = dpc_sum_rate(h, EncodingOrder::identity(2), 10);
    CHECK(sol.allocation.q[1] == 0.0);
    CHECK(sol.sum_rate == doctest::Approx(std::log2(1 + 10 * h.row_norm_squared(0))).epsilon(1e-12));
}

TEST_CASE("random 3 x 16: determinant identity over all orderings") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = oracle::random_channel(rng, 3, 16);
        const double det = static_cast<double>(oracle::determinant(oracle::gram(h)).real());
        for (const auto& o : all_orders(3)) CHECK(oracle::rel_err(product(decompose(h, o).diag_gains), det) <= 1e-8);
    }
}

TEST_CASE("decomposition invariants on random instances") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> kd(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = kd(rng);
        std::uniform_int_distribution<std::size_t> nd(k, 64);
        const std::size_t n = nd(rng);
        const auto h = oracle::random_channel(rng, k, n);
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const EncodingOrder order(perm);
        const auto d = decompose(h, order);

        REQUIRE(d.q_basis.rows() == static_cast<Eigen::Index>(n));
        REQUIRE(d.q_basis.cols() == static_cast<Eigen::Index>(k));
        const CMatrix qhq = d.q_basis.adjoint() * d.q_basis;
        CHECK((qhq - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-12);

        CMatrix hp(k, n);
        for (std::size_t s = 0; s < k; ++s) hp.row(s) = h.entries().row(order[s]);
        const CMatrix recon = d.q_basis * d.r_upper;
        CHECK((recon - hp.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * std::sqrt(h.entries().cwiseAbs2().sum()));

        double frob = h.entries().cwiseAbs2().sum(), diag_sum = 0;
        for (std::size_t s = 0; s < k; ++s) {
            CHECK(d.r_upper(s, s).real() >= 0);
            CHECK(d.r_upper(s, s).imag() == 0.0);
            for (std::size_t r = s + 1; r < k; ++r) CHECK(d.r_upper(r, s) == Complex(0, 0));
            CHECK(d.diag_gains[s] == doctest::Approx(std::norm(d.r_upper(s, s))).epsilon(1e-14));
            diag_sum += d.diag_gains[s];
        }
        CHECK(diag_sum <= frob * (1 + 1e-12));
        CHECK(ordered_gains(h, order) == d.diag_gains);
    }
}

TEST_CASE("K = 2: second-encoded gain equals 1 / alpha of that user") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = oracle::random_channel(rng, 2, 10);
        const auto zf = build_zf(h);
        for (const auto& o : all_orders(2)) {
            const auto g = decompose(h, o).diag_gains;
            CHECK(oracle::rel_err(g[1] * zf.alpha[o[1]], 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("dpc_sum_rate examples") {
    SUBCASE("single unit-norm user") {
        CRowMatrix e(1, 1);
        e << Complex(0, 1);
        CHECK(dpc_sum_rate(ChannelMatrix(e), EncodingOrder::identity(1), 10).sum_rate ==
              doctest::Approx(std::log2(11.0)).epsilon(1e-14));
    }
    SUBCASE("orthogonal equal-norm rows split evenly") {
        const double nrm = 1.3;
        const auto h = ChannelMatrix(orthogonal_rows({nrm, nrm, nrm, nrm}, 6));
        const auto sol = dpc_sum_rate(h, EncodingOrder::parse("3-1-4-2"), 8);
        CHECK(sol.sum_rate == doctest::Approx(4 * std::log2(1 + nrm * nrm * 8 / 4)).epsilon(1e-13));
        for (double q : sol.allocation.q) CHECK(q == doctest::Approx(2).epsilon(1e-13));
    }
    SUBCASE("budget met and per-user reindexing") {
        std::mt19937_64 rng(43);
        const auto h = oracle::random_channel(rng, 3, 9);
        const auto order = EncodingOrder::parse("3-1-2");
        const auto sol = dpc_sum_rate(h, order, 10);
        const auto q = sol.user_powers();
        const auto r = sol.user_rates();
        CHECK(oracle::rel_err(std::accumulate(q.begin(), q.end(), 0.0), 10) <= 1e-10);
        for (std::size_t s = 0; s < 3; ++s) {
            CHECK(q[order[s]] == sol.allocation.q[s]);
            CHECK(r[order[s]] == doctest::Approx(oracle::rate(sol.decomposition.diag_gains[s], sol.allocation.q[s])));
        }
    }
}

TEST_CASE("co-linear pair on the 500 x 500 array: single-user DPC rates") {
    ScenarioConfig sc;
    sc.layout = UserLayout::colinear(10, 0.2);
    const auto h = build_channel(sc);
    const auto g = decompose(h, EncodingOrder::identity(2)).diag_gains;
    CHECK(std::log2(1 + 10 * g[0]) == doctest::Approx(5.717).epsilon(0.05));
    CHECK(std::log2(1 + 10 * g[1]) == doctest::Approx(2.578).epsilon(0.05));
}

TEST_CASE("exhaustive ordering") {
    SUBCASE("K = 1 returns identity") {
        std::mt19937_64 rng(1);
        CHECK(best_order_exhaustive(oracle::random_channel(rng, 1, 4), 10).order() == EncodingOrder::identity(1));
    }
    SUBCASE("orthogonal pair ties go to 1-2") {
        const auto h = ChannelMatrix(orthogonal_rows({0.7, 1.9}, 3));
        CHECK(best_order_exhaustive(h, 10).order().label() == "1-2");
    }
    SUBCASE("random K = 3 matches explicit enumeration") {
        std::mt19937_64 rng(47);
        for (int trial = 0; trial < 20; ++trial) {
            const auto h = oracle::random_channel(rng, 3, 16);
            double best = -1;
            for (const auto& o : all_orders(3)) best = std::max(best, dpc_sum_rate(h, o, 10).sum_rate);
            CHECK(best_order_exhaustive(h, 10).sum_rate == best);
        }
    }
    SUBCASE("cap") {
        std::mt19937_64 rng(1);
        CHECK_THROWS_AS(best_order_exhaustive(oracle::random_channel(rng, 9, 12), 10), CapExceededError);
        ExhaustiveOptions small;
        small.max_users = 2;
        CHECK_THROWS_AS(best_order_exhaustive(oracle::random_channel(rng, 3, 4), 10, 1.0, small), CapExceededError);
    }
}

TEST_CASE("greedy ordering") {
    SUBCASE("stronger user first") {
        const auto h = ChannelMatrix(orthogonal_rows({0.5, 2.0}, 2));
        CHECK(greedy_order(h).label() == "2-1");
    }
    SUBCASE("equal norms keep index order") {
        const auto h = ChannelMatrix(orthogonal_rows({1, 1, 1}, 4));
        CHECK(greedy_order(h) == EncodingOrder::identity(3));
    }
    SUBCASE("never beats exhaustive") {
        std::mt19937_64 rng(53);
        double worst_gap = 0;
        for (int trial = 0; trial < 30; ++trial) {
            const auto h = oracle::random_channel(rng, 5, 32);
            const double ex = best_order_exhaustive(h, 10).sum_rate;
            const double gr = best_order_greedy(h, 10).sum_rate;
            CHECK(gr <= ex * (1 + 1e-12));
            worst_gap = std::max(worst_gap, ex - gr);
        }
        MESSAGE("largest greedy gap (bits/channel use): " << worst_gap);
    }
    SUBCASE("greedy is also allowed above the exhaustive cap") {
        std::mt19937_64 rng(59);
        const auto sol = best_order_greedy(oracle::random_channel(rng, 10, 12), 10);
        CHECK(sol.order().size() == 10);
    }
}

TEST_CASE("best-order DPC dominates ZF on random channels") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = oracle::random_channel(rng, 2 + trial % 3, 8);
        CHECK(best_order_exhaustive(h, 10).sum_rate >= zf_sum_rate(h, 10).sum_rate - 1e-9);
    }
}

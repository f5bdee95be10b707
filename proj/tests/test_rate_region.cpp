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

#include "nfdpc/rate_region.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace nfdpc;

namespace {

ChannelMatrix orthogonal_pair(double n1, double n2) {
    CRowMatrix e = CRowMatrix::Zero(2, 3);
    e(0, 0) = n1;
    e(1, 2) = Complex(0, n2);
    return ChannelMatrix(e);
}

ChannelMatrix random_geometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> du(5, 100), su(0.05, 5);
    ScenarioConfig sc;
    sc.array = ArrayConfig::square(rng() % 2 ? 10 : 20);
    const double d = du(rng), s = su(rng);
    sc.layout = rng() % 2 ? UserLayout::colinear(d, s) : UserLayout::coplanar(d, s);
    return build_channel(sc);
}

// Upper boundary of a region at abscissa x by linear interpolation.
double boundary_at(const RateRegion& r, double x) {
    const auto& b = r.boundary;
    if (x <= b.front().r1) return b.front().r2;
    if (x > b.back().r1) return 0;
    double best = 0;
    for (std::size_t i = 1; i < b.size(); ++i) {
        if (b[i - 1].r1 <= x && x <= b[i].r1) {
            const double w = b[i].r1 - b[i - 1].r1;
            const double v = w == 0 ? std::max(b[i - 1].r2, b[i].r2)
                                    : b[i - 1].r2 + (b[i].r2 - b[i - 1].r2) * (x - b[i - 1].r1) / w;
            best = std::max(best, v);
        }
    }
    return best;
}

void check_shape(const RateRegion& r) {
    REQUIRE(r.boundary.size() >= 2);
    CHECK(r.boundary.front().r1 == 0.0);
    CHECK(r.boundary.back().r2 == 0.0);
    for (std::size_t i = 1; i < r.boundary.size(); ++i) {
        CHECK(r.boundary[i].r1 >= r.boundary[i - 1].r1);
        CHECK(r.boundary[i].r2 <= r.boundary[i - 1].r2);
    }
    for (const auto& p : r.boundary) {
        CHECK(p.r1 >= 0);
        CHECK(p.r2 >= 0);
        CHECK(std::isfinite(p.r1));
        CHECK(std::isfinite(p.r2));
    }
    CHECK(oracle::rel_err(r.area, trapezoid_area(r.boundary)) <= 1e-12);
}

} // namespace

TEST_CASE("symmetric unit ZF region with three samples") {
    const auto r = zf_region(orthogonal_pair(1, 1), 1, 3);
    REQUIRE(r.boundary.size() == 3);
    CHECK(r.boundary[0].r1 == 0.0);
    CHECK(r.boundary[0].r2 == doctest::Approx(1));
    CHECK(r.boundary[1].r1 == doctest::Approx(std::log2(1.5)));
    CHECK(r.boundary[1].r2 == doctest::Approx(std::log2(1.5)));
    CHECK(r.boundary[2].r1 == doctest::Approx(1));
    CHECK(r.boundary[2].r2 == 0.0);
    CHECK(r.r1_max == doctest::Approx(1));
    CHECK(r.r2_max == doctest::Approx(1));
    CHECK(r.area == doctest::Approx(std::log2(1.5)));
    check_shape(r);
}

TEST_CASE("trapezoid area of a triangle and a square") {
    const std::vector<RatePoint> tri{{0, 2}, {2, 0}};
    CHECK(trapezoid_area(tri) == 2.0);
    const std::vector<RatePoint> sq{{0, 1}, {1, 1}, {1, 0}};
    CHECK(trapezoid_area(sq) == 1.0);
}

TEST_CASE("orthogonal equal-gain users: DPC region coincides with ZF") {
    const auto h = orthogonal_pair(1.2, 1.2);
    const auto zf = zf_region(h, 10, 101);
    for (const char* label : {"1-2", "2-1"}) {
        const auto dpc = dpc_region(h, 10, EncodingOrder::parse(label), 101);
        REQUIRE(dpc.boundary.size() == zf.boundary.size());
        for (std::size_t i = 0; i < zf.boundary.size(); ++i) {
            CHECK(dpc.boundary[i].r1 == doctest::Approx(zf.boundary[i].r1).epsilon(1e-12));
            CHECK(dpc.boundary[i].r2 == doctest::Approx(zf.boundary[i].r2).epsilon(1e-12));
        }
        CHECK(dpc.area == doctest::Approx(zf.area).epsilon(1e-12));
        check_shape(dpc);
    }
}

TEST_CASE("power splits meet the budget with equality") {
    std::mt19937_64 rng(71);
    const auto h = oracle::random_channel(rng, 2, 6);
    const auto zf_pre = build_zf(h);
    const auto zf = zf_region(h, 7, 257);
    for (const auto& s : zf.splits)
        CHECK(oracle::rel_err(zf_pre.alpha[0] * s.q1 + zf_pre.alpha[1] * s.q2, 7) <= 1e-12);
    const auto dpc = dpc_region(h, 7, EncodingOrder::parse("2-1"), 257);
    for (const auto& s : dpc.splits) CHECK(oracle::rel_err(s.q1 + s.q2, 7) <= 1e-12);
}

TEST_CASE("regions require two users and three samples") {
    std::mt19937_64 rng(73);
    const auto h3 = oracle::random_channel(rng, 3, 6);
    CHECK_THROWS_AS(zf_region(h3, 10), ValidationError);
    CHECK_THROWS_AS(dpc_region(h3, 10, EncodingOrder::identity(3)), ValidationError);
    const auto h2 = oracle::random_channel(rng, 2, 6);
    CHECK_THROWS_AS(zf_region(h2, 10, 2), ValidationError);
    CHECK_THROWS_AS(dpc_region(h2, 10, EncodingOrder::identity(2), 2), ValidationError);
}

TEST_CASE("rank-deficient ZF propagates") {
    ScenarioConfig sc;
    sc.array = ArrayConfig::square(10);
    sc.layout = UserLayout::coplanar(10, 0);
    CHECK_THROWS_AS(zf_region(build_channel(sc), 10), RankDeficientError);
}

TEST_CASE("union") {
    std::mt19937_64 rng(79);
    SUBCASE("idempotent") {
        const auto r = dpc_region(oracle::random_channel(rng, 2, 5), 10, EncodingOrder::identity(2), 201);
        const std::vector<RateRegion> two{r, r};
        const auto u = region_union(two);
        CHECK(u.area == doctest::Approx(r.area).epsilon(1e-12));
        CHECK(u.r1_max == r.r1_max);
        CHECK(u.r2_max == r.r2_max);
        check_shape(u);
    }
    SUBCASE("orthogonal orderings give the same region") {
        const auto h = orthogonal_pair(0.8, 1.7);
        const std::vector<RateRegion> both{dpc_region(h, 10, EncodingOrder::parse("1-2"), 201),
                                           dpc_region(h, 10, EncodingOrder::parse("2-1"), 201)};
        CHECK(region_union(both).area == doctest::Approx(both[0].area).epsilon(1e-12));
    }
    SUBCASE("dominates each member on random instances") {
        for (int trial = 0; trial < 30; ++trial) {
            const auto h = random_geometry(rng);
            const std::vector<RateRegion> both{dpc_region(h, 10, EncodingOrder::parse("1-2"), 301),
                                               dpc_region(h, 10, EncodingOrder::parse("2-1"), 301)};
            const auto u = region_union(both);
            check_shape(u);
            CHECK(u.area >= std::max(both[0].area, both[1].area) - 1e-12);
            for (const auto& r : both)
                for (const auto& p : r.boundary) CHECK(boundary_at(u, p.r1) >= p.r2 - 1e-9);
        }
    }
    SUBCASE("empty list") {
        CHECK_THROWS_AS(region_union(std::span<const RateRegion>{}), ValidationError);
    }
}

TEST_CASE("ZF boundary lies under the DPC ordering union") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = random_geometry(rng);
        const auto zf = zf_region(h, 10, 201);
        const std::vector<RateRegion> both{dpc_region(h, 10, EncodingOrder::parse("1-2"), 201),
                                           dpc_region(h, 10, EncodingOrder::parse("2-1"), 201)};
        const auto u = region_union(both);
        for (const auto& p : zf.boundary) CHECK(boundary_at(u, p.r1) >= p.r2 - 1e-9);
    }
}

TEST_CASE("convex hull contains the boundary and is concave") {
    std::mt19937_64 rng(89);
    const auto r = dpc_region(random_geometry(rng), 10, EncodingOrder::identity(2), 301);
    const auto hull = convex_hull(r);
    check_shape(hull);
    CHECK(hull.area >= r.area - 1e-12);
    for (const auto& p : r.boundary) CHECK(boundary_at(hull, p.r1) >= p.r2 - 1e-12);
    for (std::size_t i = 2; i < hull.boundary.size(); ++i) {
        const auto& a = hull.boundary[i - 2];
        const auto& b = hull.boundary[i - 1];
        const auto& c = hull.boundary[i];
        CHECK((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1) <= 1e-12);
    }
}

TEST_CASE("area_improvement") {
    RateRegion a, b;
    a.area = b.area = 3.0;
    CHECK(area_improvement(a, b) == 0.0);
    a.area = 7.5;
    CHECK(area_improvement(a, b) == doctest::Approx(150));
    b.area = 0;
    CHECK_THROWS_AS(area_improvement(a, b), ValidationError);
}

TEST_CASE("reference two-user scenarios on the 500 x 500 array") {
    for (auto kind : {LayoutKind::CoLinear, LayoutKind::Coplanar}) {
        ScenarioConfig sc;
        sc.layout = kind == LayoutKind::CoLinear ? UserLayout::colinear(10, 0.2) : UserLayout::coplanar(10, 0.2);
        const auto h = build_channel(sc);
        const auto zf = zf_region(h, 10);
        const auto dpc = dpc_region(h, 10, EncodingOrder::identity(2));
        check_shape(zf);
        check_shape(dpc);
        CHECK(oracle::rel_err(dpc.r2_max, zf.r2_max) <= 1e-6);
        CHECK(oracle::rel_err(dpc.r1_max, std::log2(1 + 10 * h.row_norm_squared(0))) <= 1e-12);
        if (kind == LayoutKind::CoLinear) {
            CHECK(zf.area == doctest::Approx(5.0617).epsilon(0.1));
            CHECK(dpc.area == doctest::Approx(12.5125).epsilon(0.1));
            CHECK(std::abs(area_improvement(dpc, zf) - 147.2) <= 15);
        } else {
            CHECK(oracle::rel_err(zf.r1_max, zf.r2_max) <= 1e-9);
            CHECK(zf.area == doctest::Approx(19.7232).epsilon(0.1));
            CHECK(dpc.area == doctest::Approx(24.2146).epsilon(0.1));
            CHECK(std::abs(area_improvement(dpc, zf) - 22.77) <= 5);
        }
        // Sampling convergence.
        CHECK(std::abs(zf_region(h, 10, 8001).area - zf.area) < 1e-4);
        CHECK(std::abs(dpc_region(h, 10, EncodingOrder::identity(2), 8001).area - dpc.area) < 1e-4);
    }
}

TEST_CASE("region CSV layout") {
    const auto h = orthogonal_pair(1, 1);
    const std::vector<RateRegion> regions{zf_region(h, 1, 3), dpc_region(h, 1, EncodingOrder::identity(2), 3)};
    std::ostringstream out;
    write_region_csv(out, regions);
    const auto text = out.str();
    CHECK(text.starts_with("scheme,order,t,q1,q2,r1,r2\n"));
    CHECK(text.find("\nzf,,0,0,1,0,1\n") != std::string::npos);
    CHECK(text.find("\ndpc,1-2,") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);

    std::ostringstream sum;
    write_region_summary_csv(sum, regions, regions[0]);
    CHECK(sum.str().starts_with("scheme,order,r1_max,r2_max,area,area_improvement_pct\nzf,,1,1,"));
}

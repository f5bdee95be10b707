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

#include "nfdpc/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace nfdpc {

std::string_view to_string(Scheme scheme) { return scheme == Scheme::Zf ? "zf" : "dpc"; }

double trapezoid_area(std::span<const RatePoint> boundary) {
    double area = 0.0;
    for (std::size_t i = 1; i < boundary.size(); ++i)
        area += 0.5 * (boundary[i].r1 - boundary[i - 1].r1) * (boundary[i].r2 + boundary[i - 1].r2);
    return area;
}

namespace {

double rate_of(double snr) { return std::log1p(snr) / std::numbers::ln2; }

void require_two_users(const ChannelMatrix& h, std::size_t m_points) {
    if (h.users() != 2)
        throw ValidationError("rate region: needs exactly 2 users (got " + std::to_string(h.users()) + ")");
    if (m_points < 3)
        throw ValidationError("rate region: m_points must be >= 3");
}

double grid_t(std::size_t i, std::size_t m) {
    return i + 1 == m ? 1.0 : static_cast<double>(i) / static_cast<double>(m - 1);
}

void finish(RateRegion& region) {
    // r1 ascending; equal r1 keeps the larger r2 first so r2 stays non-increasing.
    std::vector<std::size_t> idx(region.boundary.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = region.boundary[a];
        const auto& pb = region.boundary[b];
        return pa.r1 < pb.r1 || (pa.r1 == pb.r1 && pa.r2 > pb.r2);
    });
    std::vector<RatePoint> boundary;
    std::vector<PowerSplit> splits;
    for (std::size_t i : idx) {
        boundary.push_back(region.boundary[i]);
        if (!region.splits.empty()) splits.push_back(region.splits[i]);
    }
    region.boundary = std::move(boundary);
    region.splits = std::move(splits);

    region.area = trapezoid_area(region.boundary);
    region.r1_max = 0.0;
    region.r2_max = 0.0;
    for (const auto& p : region.boundary) {
        region.r1_max = std::max(region.r1_max, p.r1);
        region.r2_max = std::max(region.r2_max, p.r2);
    }
}

// r2 of a boundary at abscissa x; -inf outside its r1 range. On a vertical
// segment the top value is returned.
double envelope_at(const RateRegion& region, double x) {
    const auto& b = region.boundary;
    if (b.empty() || x < b.front().r1 || x > b.back().r1)
        return -std::numeric_limits<double>::infinity();
    const auto it = std::lower_bound(b.begin(), b.end(), x, [](const RatePoint& p, double v) { return p.r1 < v; });
    if (it->r1 == x)
        return it->r2;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (x - lo.r1) / (hi.r1 - lo.r1);
    return lo.r2 + w * (hi.r2 - lo.r2);
}

} // namespace

RateRegion zf_region(const ChannelMatrix& h, double pt, std::size_t m_points, double noise_power,
                     const ZfOptions& options) {
    require_two_users(h, m_points);
    if (!(pt > 0.0) || !(noise_power > 0.0))
        throw ValidationError("rate region: pt and noise_power must be positive");
    const ZfPrecoder zf = build_zf(h, options);

    RateRegion region;
    region.scheme = Scheme::Zf;
    region.boundary.reserve(m_points);
    region.splits.reserve(m_points);
    for (std::size_t i = 0; i < m_points; ++i) {
        const double t = grid_t(i, m_points);
        const double q1 = t * pt / zf.alpha[0];
        const double q2 = (1.0 - t) * pt / zf.alpha[1];
        region.splits.push_back({t, q1, q2});
        region.boundary.push_back({rate_of(q1 / noise_power), rate_of(q2 / noise_power)});
    }
    finish(region);
    return region;
}

RateRegion dpc_region(const ChannelMatrix& h, double pt, const EncodingOrder& order, std::size_t m_points,
                      double noise_power) {
    require_two_users(h, m_points);
    if (!(pt > 0.0) || !(noise_power > 0.0))
        throw ValidationError("rate region: pt and noise_power must be positive");
    const auto gains = ordered_gains(h, order);

    RateRegion region;
    region.scheme = Scheme::Dpc;
    region.order = order.label();
    region.boundary.reserve(m_points);
    region.splits.reserve(m_points);
    for (std::size_t i = 0; i < m_points; ++i) {
        const double t = grid_t(i, m_points);
        const double slot_q[2] = {t * pt, (1.0 - t) * pt};
        double q[2] = {0.0, 0.0};
        double r[2] = {0.0, 0.0};
        for (std::size_t slot = 0; slot < 2; ++slot) {
            q[order[slot]] = slot_q[slot];
            r[order[slot]] = rate_of(gains[slot] * slot_q[slot] / noise_power);
        }
        region.splits.push_back({t, q[0], q[1]});
        region.boundary.push_back({r[0], r[1]});
    }
    finish(region);
    return region;
}

RateRegion region_union(std::span<const RateRegion> regions) {
    if (regions.empty())
        throw ValidationError("region_union: no regions");

    std::vector<double> xs;
    for (const auto& r : regions)
        for (const auto& p : r.boundary)
            xs.push_back(p.r1);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    RateRegion out;
    out.scheme = regions.front().scheme;
    out.order = regions.size() == 1 ? regions.front().order : "union";
    for (double x : xs) {
        double y = -std::numeric_limits<double>::infinity();
        for (const auto& r : regions)
            y = std::max(y, envelope_at(r, x));
        out.boundary.push_back({x, std::max(y, 0.0)});
    }
    if (!out.boundary.empty() && out.boundary.back().r2 > 0.0)
        out.boundary.push_back({out.boundary.back().r1, 0.0});
    finish(out);
    return out;
}

RateRegion convex_hull(const RateRegion& region) {
    RateRegion out;
    out.scheme = region.scheme;
    out.order = region.order.empty() ? "hull" : region.order + " hull";

    // Boundary is already sorted by r1 ascending, r2 descending on ties.
    std::vector<RatePoint> hull;
    for (const auto& p : region.boundary) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            const double cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if (cross < 0.0)
                break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    out.boundary = std::move(hull);
    finish(out);
    return out;
}

double area_improvement(const RateRegion& a, const RateRegion& b) {
    if (!(b.area > 0.0))
        throw ValidationError("area_improvement: reference area must be positive");
    return 100.0 * (a.area - b.area) / b.area;
}

void write_region_csv(std::ostream& out, std::span<const RateRegion> regions) {
    out << "scheme,order,t,q1,q2,r1,r2\n";
    for (const auto& region : regions) {
        for (std::size_t i = 0; i < region.boundary.size(); ++i) {
            out << to_string(region.scheme) << ',' << region.order << ',';
            if (region.splits.size() == region.boundary.size()) {
                const auto& s = region.splits[i];
                out << format_double(s.t) << ',' << format_double(s.q1) << ',' << format_double(s.q2);
            } else {
                out << ",,";
            }
            out << ',' << format_double(region.boundary[i].r1) << ',' << format_double(region.boundary[i].r2) << '\n';
        }
    }
}

void write_region_summary_csv(std::ostream& out, std::span<const RateRegion> regions, const RateRegion& baseline) {
    out << "scheme,order,r1_max,r2_max,area,area_improvement_pct\n";
    for (const auto& region : regions)
        out << to_string(region.scheme) << ',' << region.order << ',' << format_double(region.r1_max) << ','
            << format_double(region.r2_max) << ',' << format_double(region.area) << ','
            << format_double(area_improvement(region, baseline)) << '\n';
}

} // namespace nfdpc

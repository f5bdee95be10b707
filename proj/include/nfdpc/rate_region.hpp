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

#ifndef NFDPC_RATE_REGION_HPP
#define NFDPC_RATE_REGION_HPP

#include "nfdpc/dpc.hpp"
#include "nfdpc/zf.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfdpc {

enum class Scheme { Zf, Dpc };

std::string_view to_string(Scheme scheme);

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Power split that produced a boundary point. Absent (NaN) for derived regions
// such as unions and hulls.
struct PowerSplit {
    double t = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
};

// Two-user region boundary, r1 ascending and r2 non-increasing, from (0, r2_max)
// to (r1_max, 0).
struct RateRegion {
    Scheme scheme = Scheme::Zf;
    std::string order;  // "" for ZF, "1-2"/"2-1" per DPC ordering, "union", "... hull"
    std::vector<RatePoint> boundary;
    std::vector<PowerSplit> splits;  // parallel to boundary when present
    double area = 0.0;
    double r1_max = 0.0;
    double r2_max = 0.0;
};

inline constexpr std::size_t kDefaultRegionPoints = 4001;

// Trapezoidal integral of r2 over r1.
double trapezoid_area(std::span<const RatePoint> boundary);

// q1 = t pt / alpha_1, q2 = (1 - t) pt / alpha_2 for t on a uniform grid over [0, 1].
RateRegion zf_region(const ChannelMatrix& h, double pt, std::size_t m_points = kDefaultRegionPoints,
                     double noise_power = 1.0, const ZfOptions& options = {});

// Slot powers (t pt, (1 - t) pt) under `order`, reported per natural user.
RateRegion dpc_region(const ChannelMatrix& h, double pt, const EncodingOrder& order,
                      std::size_t m_points = kDefaultRegionPoints, double noise_power = 1.0);

// Pointwise upper envelope on the merged r1 grid. Throws on an empty list.
RateRegion region_union(std::span<const RateRegion> regions);

// Time-sharing (upper concave) hull of the boundary.
RateRegion convex_hull(const RateRegion& region);

// 100 (a.area - b.area) / b.area.
double area_improvement(const RateRegion& a, const RateRegion& b);

// Header scheme,order,t,q1,q2,r1,r2; union/hull rows leave t,q1,q2 empty.
void write_region_csv(std::ostream& out, std::span<const RateRegion> regions);

// Header scheme,order,r1_max,r2_max,area,area_improvement_pct (relative to `baseline`).
void write_region_summary_csv(std::ostream& out, std::span<const RateRegion> regions, const RateRegion& baseline);

} // namespace nfdpc

#endif

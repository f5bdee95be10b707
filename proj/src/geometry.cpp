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

#include "nfdpc/geometry.hpp"

#include "nfdpc/types.hpp"

#include <cmath>
#include <string>

namespace nfdpc {

double Position::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool Position::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

double distance(const Position& a, const Position& b) { return (a - b).norm(); }

void ArrayConfig::validate() const {
    if (nx < 1 || ny < 1)
        throw ValidationError("array: nx and ny must be >= 1 (got nx=" + std::to_string(nx) +
                              ", ny=" + std::to_string(ny) + ")");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw ValidationError("array: spacing must be a positive finite length");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw ValidationError("array: wavelength must be a positive finite length");
}

double ArrayConfig::aperture() const {
    const double ex = (nx - 1) * spacing;
    const double ey = (ny - 1) * spacing;
    return std::hypot(ex, ey);
}

std::string_view to_string(LayoutKind kind) {
    switch (kind) {
    case LayoutKind::CoLinear: return "colinear";
    case LayoutKind::Coplanar: return "coplanar";
    case LayoutKind::Explicit: return "explicit";
    }
    return "unknown";
}

LayoutKind parse_layout_kind(std::string_view text) {
    if (text == "colinear" || text == "co-linear") return LayoutKind::CoLinear;
    if (text == "coplanar") return LayoutKind::Coplanar;
    if (text == "explicit") return LayoutKind::Explicit;
    throw ValidationError("layout: expected one of colinear, coplanar, explicit (got '" + std::string(text) + "')");
}

void UserLayout::validate() const {
    if (kind == LayoutKind::Explicit) {
        if (positions.empty())
            throw ValidationError("layout: explicit layout needs at least one position");
        for (std::size_t k = 0; k < positions.size(); ++k) {
            const auto& p = positions[k];
            if (!p.finite())
                throw ValidationError("layout: position " + std::to_string(k + 1) + " is not finite");
            if (!(p.z > 0.0))
                throw ValidationError("layout: position " + std::to_string(k + 1) +
                                      " must lie in front of the array (z > 0)");
        }
        return;
    }
    if (!(d > 0.0) || !std::isfinite(d))
        throw ValidationError("layout: distance d must be positive and finite");
    if (!(s >= 0.0) || !std::isfinite(s))
        throw ValidationError("layout: spacing s must be non-negative and finite");
    if (kind == LayoutKind::CoLinear && !std::isfinite(d + s))
        throw ValidationError("layout: d + s overflows");
}

std::vector<Position> build_array(const ArrayConfig& cfg) {
    cfg.validate();
    std::vector<Position> out;
    out.reserve(cfg.element_count());
    const double cx = 0.5 * (cfg.nx - 1);
    const double cy = 0.5 * (cfg.ny - 1);
    for (int i = 0; i < cfg.nx; ++i) {
        const double x = (i - cx) * cfg.spacing;
        for (int j = 0; j < cfg.ny; ++j)
            out.push_back({x, (j - cy) * cfg.spacing, 0.0});
    }
    return out;
}

std::vector<Position> build_users(const UserLayout& layout) {
    layout.validate();
    switch (layout.kind) {
    case LayoutKind::CoLinear:
        return {{0.0, 0.0, layout.d}, {0.0, 0.0, layout.d + layout.s}};
    case LayoutKind::Coplanar:
        return {{-0.5 * layout.s, 0.0, layout.d}, {0.5 * layout.s, 0.0, layout.d}};
    case LayoutKind::Explicit:
        return layout.positions;
    }
    throw ValidationError("layout: unknown kind");
}

double far_field_boundary(double aperture, double wavelength) {
    if (!(aperture > 0.0) || !(wavelength > 0.0))
        throw ValidationError("far_field_boundary: aperture and wavelength must be positive");
    return 2.0 * aperture * aperture / wavelength;
}

} // namespace nfdpc

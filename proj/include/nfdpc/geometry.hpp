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

#ifndef NFDPC_GEOMETRY_HPP
#define NFDPC_GEOMETRY_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace nfdpc {

// Cartesian point; lengths are in wavelengths unless stated otherwise.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Position operator-(const Position& a, const Position& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend bool operator==(const Position&, const Position&) = default;

    double norm() const;
    bool finite() const;
};

double distance(const Position& a, const Position& b);

// Uniform planar array on the xy-plane, centred at the origin.
struct ArrayConfig {
    int nx = 1;
    int ny = 1;
    double spacing = 0.5;    // element pitch
    double wavelength = 1.0;

    void validate() const;
    std::size_t element_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    // Largest element-to-element extent (diagonal of the grid).
    double aperture() const;

    static ArrayConfig square(int side, double spacing = 0.5, double wavelength = 1.0) {
        return {side, side, spacing, wavelength};
    }
};

enum class LayoutKind { CoLinear, Coplanar, Explicit };

std::string_view to_string(LayoutKind kind);
LayoutKind parse_layout_kind(std::string_view text);

// User placement. CoLinear and Coplanar always describe two users
// parameterised by the range d and the inter-user spacing s.
struct UserLayout {
    LayoutKind kind = LayoutKind::CoLinear;
    double d = 10.0;
    double s = 0.2;
    std::vector<Position> positions; // Explicit only

    static UserLayout colinear(double d, double s) { return {LayoutKind::CoLinear, d, s, {}}; }
    static UserLayout coplanar(double d, double s) { return {LayoutKind::Coplanar, d, s, {}}; }
    static UserLayout explicit_positions(std::vector<Position> users) {
        return {LayoutKind::Explicit, 0.0, 0.0, std::move(users)};
    }

    void validate() const;
    std::size_t user_count() const { return kind == LayoutKind::Explicit ? positions.size() : 2; }
};

// Element (i, j) sits at ((i - (nx-1)/2) * spacing, (j - (ny-1)/2) * spacing, 0),
// returned row-major in (i, j).
std::vector<Position> build_array(const ArrayConfig& cfg);

// CoLinear: (0,0,d) and (0,0,d+s) on boresight, nearer user first.
// Coplanar: (-s/2,0,d) and (+s/2,0,d).
// Explicit: positions verbatim.
std::vector<Position> build_users(const UserLayout& layout);

// Fraunhofer distance 2 D^2 / lambda. Units follow the arguments.
double far_field_boundary(double aperture, double wavelength);

} // namespace nfdpc

#endif

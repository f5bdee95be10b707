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

#ifndef NFDPC_CHANNEL_HPP
#define NFDPC_CHANNEL_HPP

#include "nfdpc/geometry.hpp"
#include "nfdpc/types.hpp"

#include <iosfwd>
#include <vector>

namespace nfdpc {

struct ScenarioConfig {
    ArrayConfig array = ArrayConfig::square(500);
    UserLayout layout;
    double pt = 10.0;          // transmit power budget
    double noise_power = 1.0;  // sigma^2

    void validate() const;
};

// K x N line-of-sight channel, row k is user k.
class ChannelMatrix {
public:
    ChannelMatrix() = default;
    // Throws ValidationError on an empty or non-finite matrix.
    explicit ChannelMatrix(CRowMatrix entries);

    std::size_t users() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t antennas() const { return static_cast<std::size_t>(entries_.cols()); }
    const CRowMatrix& entries() const { return entries_; }
    Complex operator()(std::size_t k, std::size_t n) const { return entries_(k, n); }

    double row_norm_squared(std::size_t k) const { return entries_.row(k).squaredNorm(); }
    std::vector<double> row_norms_squared() const;

private:
    CRowMatrix entries_;
};

// Spherical-wave coefficient exp(-j 2 pi d / lambda) / (sqrt(4 pi) d), d = |r - t|.
// Throws ValidationError when the points coincide.
Complex channel_coefficient(const Position& t, const Position& r, double wavelength);

ChannelMatrix build_channel(const std::vector<Position>& antennas, const std::vector<Position>& users,
                            double wavelength);
ChannelMatrix build_channel(const ScenarioConfig& scenario);

// G = H H^H.
CMatrix channel_gram(const ChannelMatrix& h);

// Debug dump with header k,n,re,im (1-based indices). Meant for small N only:
// one line per coefficient.
void write_channel_csv(std::ostream& out, const ChannelMatrix& h);

} // namespace nfdpc

#endif

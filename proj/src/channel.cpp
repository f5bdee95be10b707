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

#include "nfdpc/channel.hpp"

#include "nfdpc/format.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace nfdpc {

void ScenarioConfig::validate() const {
    array.validate();
    layout.validate();
    if (!(pt > 0.0) || !std::isfinite(pt))
        throw ValidationError("scenario: pt must be positive and finite");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw ValidationError("scenario: noise_power must be positive and finite");
}

ChannelMatrix::ChannelMatrix(CRowMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.cols() == 0)
        throw ValidationError("channel: matrix must be non-empty");
    if (!entries_.allFinite())
        throw ValidationError("channel: matrix has non-finite entries");
}

std::vector<double> ChannelMatrix::row_norms_squared() const {
    std::vector<double> out(users());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = row_norm_squared(k);
    return out;
}

namespace {

// Phase depends only on d mod lambda; reducing first keeps full precision at large d.
Complex coefficient_at(double d, double wavelength) {
    const double cycles = d / wavelength;
    const double frac = cycles - std::floor(cycles);
    const double magnitude = 1.0 / (std::sqrt(4.0 * std::numbers::pi) * d);
    return std::polar(magnitude, -2.0 * std::numbers::pi * frac);
}

} // namespace

Complex channel_coefficient(const Position& t, const Position& r, double wavelength) {
    if (!(wavelength > 0.0))
        throw ValidationError("channel: wavelength must be positive");
    const double d = distance(r, t);
    if (!(d > 0.0))
        throw ValidationError("channel: transmit and receive points coincide");
    return coefficient_at(d, wavelength);
}

ChannelMatrix build_channel(const std::vector<Position>& antennas, const std::vector<Position>& users,
                            double wavelength) {
    if (antennas.empty() || users.empty())
        throw ValidationError("channel: need at least one antenna and one user");
    if (!(wavelength > 0.0))
        throw ValidationError("channel: wavelength must be positive");

    CRowMatrix h(users.size(), antennas.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        for (std::size_t n = 0; n < antennas.size(); ++n) {
            const double d = distance(users[k], antennas[n]);
            if (!(d > 0.0))
                throw ValidationError("channel: user " + std::to_string(k + 1) + " coincides with antenna " +
                                      std::to_string(n + 1));
            h(k, n) = coefficient_at(d, wavelength);
        }
    }
    return ChannelMatrix(std::move(h));
}

ChannelMatrix build_channel(const ScenarioConfig& scenario) {
    scenario.validate();
    return build_channel(build_array(scenario.array), build_users(scenario.layout), scenario.array.wavelength);
}

CMatrix channel_gram(const ChannelMatrix& h) {
    const auto& e = h.entries();
    CMatrix g = e * e.adjoint();
    // Exact Hermitian symmetry; the product leaves rounding asymmetry otherwise.
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        g(i, i) = Complex(g(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < g.cols(); ++j)
            g(j, i) = std::conj(g(i, j));
    }
    return g;
}

void write_channel_csv(std::ostream& out, const ChannelMatrix& h) {
    out << "k,n,re,im\n";
    for (std::size_t k = 0; k < h.users(); ++k)
        for (std::size_t n = 0; n < h.antennas(); ++n)
            out << k + 1 << ',' << n + 1 << ',' << format_double(h(k, n).real()) << ','
                << format_double(h(k, n).imag()) << '\n';
}

} // namespace nfdpc

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

#ifndef NFDPC_EXPERIMENTS_HPP
#define NFDPC_EXPERIMENTS_HPP

#include "nfdpc/channel.hpp"
#include "nfdpc/dpc.hpp"
#include "nfdpc/rate_region.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nfdpc {

// (D, s) grid over a square nx x nx UPA with two users.
struct SweepGrid {
    std::vector<double> d_values;
    std::vector<double> s_values;
    int nx = 10;
    LayoutKind layout = LayoutKind::CoLinear;
    double pt = 10.0;
    double noise_power = 1.0;
    double spacing = 0.5;
    double wavelength = 1.0;

    void validate() const;
};

enum class CellStatus { Ok, ZfRankDeficient };

std::string_view to_string(CellStatus status);

struct SweepCell {
    double d = 0.0;
    double s = 0.0;
    double zf_sum_rate = 0.0;   // NaN when ZF is rank deficient
    double dpc_sum_rate = 0.0;
    double diff = 0.0;          // dpc - zf; NaN when ZF is rank deficient
    CellStatus status = CellStatus::Ok;
};

ScenarioConfig cell_scenario(const SweepGrid& grid, double d, double s);

// One grid cell: optimal-power ZF against best-ordering DPC.
SweepCell evaluate_cell(const SweepGrid& grid, double d, double s);

// Cells in row-major order (d outer, s inner) regardless of worker count.
std::vector<SweepCell> run_contour(const SweepGrid& grid, std::size_t workers = 1);

struct GainRow {
    double s = 0.0;
    CellStatus status = CellStatus::Ok;
    double alpha_1 = 0.0;  // NaN when ZF is rank deficient
    double alpha_2 = 0.0;
    double r11_sq = 0.0;   // r_kk^2 by encoding slot under the best ordering
    double r22_sq = 0.0;
    EncodingOrder order;
};

// alpha_k from ZF and r_kk^2 from DPC under the sum-rate-optimal ordering, per s.
std::vector<GainRow> run_gain_profile(double d, std::span<const double> s_values, int nx, double pt, LayoutKind layout,
                                      std::size_t workers = 1, double noise_power = 1.0);

// Header d,s,zf_sum_rate,dpc_sum_rate,diff,status.
void write_contour_csv(std::ostream& out, std::span<const SweepCell> cells);
// Header s,alpha_1,alpha_2,r11_sq,r22_sq,order.
void write_gain_csv(std::ostream& out, std::span<const GainRow> rows);

enum class ScenarioMode { Region, SumRate };

struct ScenarioOptions {
    std::size_t points = kDefaultRegionPoints;
    bool greedy = false;        // sumrate: greedy ordering instead of exhaustive
    bool hull = false;          // region: also emit time-sharing hulls
    bool dump_channel = false;  // write channel.csv (small N only)
};

// Region mode (K = 2): zf_region.csv, dpc_region_<order>.csv per ordering,
// dpc_region_union.csv, region_summary.csv.
// Sum-rate mode (K <= 8, any K with greedy): sumrate.csv, sumrate_summary.csv.
// Returns the written paths in emission order.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg, ScenarioMode mode,
                                                const std::filesystem::path& out_dir,
                                                const ScenarioOptions& options = {});

} // namespace nfdpc

#endif

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

#include "nfdpc/experiments.hpp"

#include "nfdpc/format.hpp"
#include "nfdpc/parallel.hpp"
#include "nfdpc/zf.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>

namespace nfdpc {

std::size_t default_workers() {
    if (const char* env = std::getenv("NFDPC_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_axis(const std::vector<double>& values, const char* name, bool allow_zero) {
    if (values.empty())
        throw ValidationError(std::string("sweep: ") + name + " axis is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
            throw ValidationError(std::string("sweep: ") + name + " values must be " +
                                  (allow_zero ? "non-negative" : "positive"));
        if (i > 0 && !(v > values[i - 1]))
            throw ValidationError(std::string("sweep: ") + name + " values must be strictly ascending");
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ValidationError("cannot open output file " + path.string());
    return out;
}

} // namespace

void SweepGrid::validate() const {
    check_axis(d_values, "d", false);
    check_axis(s_values, "s", true);
    if (nx < 1)
        throw ValidationError("sweep: nx must be >= 1");
    if (layout == LayoutKind::Explicit)
        throw ValidationError("sweep: layout must be colinear or coplanar");
    if (!(pt > 0.0) || !(noise_power > 0.0))
        throw ValidationError("sweep: pt and noise_power must be positive");
    ArrayConfig::square(nx, spacing, wavelength).validate();
}

std::string_view to_string(CellStatus status) {
    return status == CellStatus::Ok ? "ok" : "zf_rank_deficient";
}

ScenarioConfig cell_scenario(const SweepGrid& grid, double d, double s) {
    ScenarioConfig cfg;
    cfg.array = ArrayConfig::square(grid.nx, grid.spacing, grid.wavelength);
    cfg.layout = {grid.layout, d, s, {}};
    cfg.pt = grid.pt;
    cfg.noise_power = grid.noise_power;
    return cfg;
}

SweepCell evaluate_cell(const SweepGrid& grid, double d, double s) {
    const auto h = build_channel(cell_scenario(grid, d, s));

    SweepCell cell;
    cell.d = d;
    cell.s = s;
    cell.dpc_sum_rate = best_order_exhaustive(h, grid.pt, grid.noise_power).sum_rate;
    try {
        cell.zf_sum_rate = zf_sum_rate(h, grid.pt, grid.noise_power).sum_rate;
        cell.diff = cell.dpc_sum_rate - cell.zf_sum_rate;
    } catch (const RankDeficientError&) {
        cell.status = CellStatus::ZfRankDeficient;
        cell.zf_sum_rate = kNaN;
        cell.diff = kNaN;
    }
    return cell;
}

std::vector<SweepCell> run_contour(const SweepGrid& grid, std::size_t workers) {
    grid.validate();
    const std::size_t ns = grid.s_values.size();
    std::vector<SweepCell> cells(grid.d_values.size() * ns);
    parallel_for(cells.size(), workers, [&](std::size_t i) {
        cells[i] = evaluate_cell(grid, grid.d_values[i / ns], grid.s_values[i % ns]);
    });
    return cells;
}

std::vector<GainRow> run_gain_profile(double d, std::span<const double> s_values, int nx, double pt, LayoutKind layout,
                                      std::size_t workers, double noise_power) {
    SweepGrid grid{{d}, {s_values.begin(), s_values.end()}, nx, layout, pt, noise_power};
    grid.validate();

    std::vector<GainRow> rows(s_values.size());
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        const auto h = build_channel(cell_scenario(grid, d, s_values[i]));
        GainRow row;
        row.s = s_values[i];
        const auto dpc = best_order_exhaustive(h, pt, noise_power);
        row.order = dpc.order();
        row.r11_sq = dpc.decomposition.diag_gains[0];
        row.r22_sq = dpc.decomposition.diag_gains[1];
        try {
            const auto zf = build_zf(h);
            row.alpha_1 = zf.alpha[0];
            row.alpha_2 = zf.alpha[1];
        } catch (const RankDeficientError&) {
            row.status = CellStatus::ZfRankDeficient;
            row.alpha_1 = kNaN;
            row.alpha_2 = kNaN;
        }
        rows[i] = std::move(row);
    });
    return rows;
}

void write_contour_csv(std::ostream& out, std::span<const SweepCell> cells) {
    out << "d,s,zf_sum_rate,dpc_sum_rate,diff,status\n";
    for (const auto& c : cells)
        out << format_double(c.d) << ',' << format_double(c.s) << ',' << format_double(c.zf_sum_rate) << ','
            << format_double(c.dpc_sum_rate) << ',' << format_double(c.diff) << ',' << to_string(c.status) << '\n';
}

void write_gain_csv(std::ostream& out, std::span<const GainRow> rows) {
    out << "s,alpha_1,alpha_2,r11_sq,r22_sq,order\n";
    for (const auto& r : rows)
        out << format_double(r.s) << ',' << format_double(r.alpha_1) << ',' << format_double(r.alpha_2) << ','
            << format_double(r.r11_sq) << ',' << format_double(r.r22_sq) << ',' << r.order.label() << '\n';
}

namespace {

std::vector<std::filesystem::path> emit_regions(const ChannelMatrix& h, const ScenarioConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                const ScenarioOptions& options) {
    if (h.users() != 2)
        throw ValidationError("region mode needs exactly 2 users (got " + std::to_string(h.users()) + ")");

    std::vector<std::filesystem::path> files;
    auto write = [&](const std::string& name, std::span<const RateRegion> regions) {
        const auto path = out_dir / name;
        auto out = open_output(path);
        write_region_csv(out, regions);
        files.push_back(path);
    };

    const RateRegion zf = zf_region(h, cfg.pt, options.points, cfg.noise_power);
    std::vector<RateRegion> dpc;
    for (const auto& order : {EncodingOrder({0, 1}), EncodingOrder({1, 0})})
        dpc.push_back(dpc_region(h, cfg.pt, order, options.points, cfg.noise_power));
    const RateRegion dpc_union = region_union(dpc);

    std::vector<RateRegion> summary{zf};
    write("zf_region.csv", std::span(&zf, 1));
    for (const auto& r : dpc) {
        write("dpc_region_" + r.order + ".csv", std::span(&r, 1));
        summary.push_back(r);
    }
    write("dpc_region_union.csv", std::span(&dpc_union, 1));
    summary.push_back(dpc_union);

    if (options.hull) {
        std::vector<RateRegion> hulls;
        for (const auto& r : summary)
            hulls.push_back(convex_hull(r));
        write("region_hulls.csv", hulls);
        summary.insert(summary.end(), hulls.begin(), hulls.end());
    }

    const auto path = out_dir / "region_summary.csv";
    auto out = open_output(path);
    write_region_summary_csv(out, summary, zf);
    files.push_back(path);
    return files;
}

std::vector<std::filesystem::path> emit_sum_rates(const ChannelMatrix& h, const ScenarioConfig& cfg,
                                                  const std::filesystem::path& out_dir,
                                                  const ScenarioOptions& options) {
    const auto zf = zf_sum_rate(h, cfg.pt, cfg.noise_power);
    const auto dpc = options.greedy ? best_order_greedy(h, cfg.pt, cfg.noise_power)
                                    : best_order_exhaustive(h, cfg.pt, cfg.noise_power);
    const auto dpc_q = dpc.user_powers();
    const auto dpc_r = dpc.user_rates();
    const std::string dpc_label = std::string(options.greedy ? "greedy:" : "exhaustive:") + dpc.order().label();

    std::vector<std::filesystem::path> files;
    {
        const auto path = out_dir / "sumrate.csv";
        auto out = open_output(path);
        out << "scheme,order,user,q,rate\n";
        for (std::size_t k = 0; k < h.users(); ++k)
            out << "zf,," << k + 1 << ',' << format_double(zf.q[k]) << ',' << format_double(zf.rates[k]) << '\n';
        for (std::size_t k = 0; k < h.users(); ++k)
            out << "dpc," << dpc_label << ',' << k + 1 << ',' << format_double(dpc_q[k]) << ','
                << format_double(dpc_r[k]) << '\n';
        files.push_back(path);
    }
    {
        const auto path = out_dir / "sumrate_summary.csv";
        auto out = open_output(path);
        out << "scheme,order,sum_rate\n";
        out << "zf,," << format_double(zf.sum_rate) << '\n';
        out << "dpc," << dpc_label << ',' << format_double(dpc.sum_rate) << '\n';
        files.push_back(path);
    }
    return files;
}

} // namespace

std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg, ScenarioMode mode,
                                                const std::filesystem::path& out_dir,
                                                const ScenarioOptions& options) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    const ChannelMatrix h = build_channel(cfg);

    std::vector<std::filesystem::path> files;
    if (options.dump_channel) {
        const auto path = out_dir / "channel.csv";
        auto out = open_output(path);
        write_channel_csv(out, h);
        files.push_back(path);
    }
    auto more = mode == ScenarioMode::Region ? emit_regions(h, cfg, out_dir, options)
                                             : emit_sum_rates(h, cfg, out_dir, options);
    files.insert(files.end(), more.begin(), more.end());
    return files;
}

} // namespace nfdpc

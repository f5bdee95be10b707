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

// nfdpc command-line driver.
//
//   nfdpc region     --config colinear.cfg --points 4001 --out-dir out/
//   nfdpc contour    --nx 10 --layout colinear --d 5:100:10 --s 0.05:2:10 --pt 10
//   nfdpc gains      --nx 100 --d 10 --s 0.05:2:30
//   nfdpc sumrate    --config users.cfg [--greedy]
//   nfdpc ffboundary --aperture 1 --wavelength 0.01
//
// Exit status: 0 success, 1 invalid input, 2 numerical failure.

#include "nfdpc/config.hpp"
#include "nfdpc/experiments.hpp"
#include "nfdpc/format.hpp"
#include "nfdpc/geometry.hpp"
#include "nfdpc/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nfdpc::KeyValueConfig;
namespace fs = std::filesystem;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::size_t workers = nfdpc::default_workers();
    // Subcommand flags that map onto config keys; only set ones are applied.
    std::vector<std::pair<std::string, std::string>> flag_values;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "Flat key = value scenario file")->check(CLI::ExistingFile);
    sub->add_option("--set", c.overrides, "Override a config key (key=value); repeatable");
    sub->add_option("--out-dir", c.out_dir, "Directory for all emitted files")->capture_default_str();
    sub->add_option("--workers", c.workers, "Worker threads (default: $NFDPC_WORKERS or core count)")
        ->check(CLI::PositiveNumber);
}

// Registers --flag as an override of config key `key`.
void add_key_flag(CLI::App* sub, Common& c, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&c, key](const std::string& v) { c.flag_values.emplace_back(key, v); }, help);
}

KeyValueConfig resolve(const Common& c) {
    KeyValueConfig cfg = c.config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(c.config_path);
    for (const auto& [k, v] : c.flag_values) cfg.set(k, v);
    for (const auto& o : c.overrides) cfg.apply_override(o);
    return nfdpc::with_defaults(cfg);
}

std::string kind_of(const fs::path& p) {
    const auto name = p.filename().string();
    if (name == "region_summary.csv") return "region_summary";
    if (name == "sumrate_summary.csv") return "sumrate_summary";
    if (name == "region_hulls.csv") return "region_hull";
    if (name.starts_with("zf_region") || name.starts_with("dpc_region")) return "region";
    return p.stem().string();
}

// resolved.cfg reproduces the run: `nfdpc <sub> --config resolved.cfg`.
void write_manifest(const fs::path& out_dir, const std::string& subcommand, const KeyValueConfig& cfg,
                    const std::vector<fs::path>& artifacts) {
    const fs::path cfg_path = out_dir / "resolved.cfg";
    {
        std::ofstream out(cfg_path, std::ios::binary | std::ios::trunc);
        out << cfg.to_text();
    }
    nlohmann::ordered_json m;
    m["tool"] = "nfdpc";
    m["subcommand"] = subcommand;
    m["config_file"] = cfg_path.filename().string();
    m["config"] = cfg.values();
    m["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts)
        m["artifacts"].push_back({{"path", a.filename().string()}, {"kind", kind_of(a)}});
    std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << m.dump(2) << '\n';
}

std::size_t parse_points(const KeyValueConfig& cfg) {
    const long points = nfdpc::parse_int(*cfg.get("points"), "points");
    if (points < 3)
        throw nfdpc::ValidationError("points: must be >= 3");
    return static_cast<std::size_t>(points);
}

int run_region(const Common& c, const std::string& subcommand) {
    const auto cfg = resolve(c);
    const auto scenario = nfdpc::scenario_from(cfg);
    nfdpc::ScenarioOptions opts;
    opts.points = parse_points(cfg);
    opts.hull = nfdpc::parse_bool(*cfg.get("hull"), "hull");
    opts.dump_channel = nfdpc::parse_bool(*cfg.get("dump_channel"), "dump_channel");
    const auto ordering = *cfg.get("ordering");
    if (ordering != "exhaustive" && ordering != "greedy")
        throw nfdpc::ValidationError("ordering: expected exhaustive or greedy");
    opts.greedy = ordering == "greedy";

    const fs::path out_dir = c.out_dir;
    const auto mode = subcommand == "region" ? nfdpc::ScenarioMode::Region : nfdpc::ScenarioMode::SumRate;
    const auto files = nfdpc::run_scenario(scenario, mode, out_dir, opts);
    write_manifest(out_dir, subcommand, cfg, files);

    // Short human-readable digest of the summary file.
    std::ifstream summary(files.back());
    std::cout << summary.rdbuf();
    return 0;
}

int run_contour(const Common& c) {
    const auto cfg = resolve(c);
    const auto grid = nfdpc::sweep_from(cfg);
    const auto cells = nfdpc::run_contour(grid, c.workers);

    const fs::path out_dir = c.out_dir;
    fs::create_directories(out_dir);
    const auto path = out_dir / "contour.csv";
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        nfdpc::write_contour_csv(out, cells);
    }
    write_manifest(out_dir, "contour", cfg, {path});

    std::size_t degenerate = 0;
    for (const auto& cell : cells) degenerate += cell.status != nfdpc::CellStatus::Ok;
    std::cout << "contour: " << cells.size() << " cells (" << degenerate << " ZF rank deficient) -> "
              << path.string() << '\n';
    return 0;
}

int run_gains(const Common& c) {
    const auto cfg = resolve(c);
    const auto grid = nfdpc::sweep_from(cfg); // validates nx, layout, s axis, pt
    const double d = nfdpc::parse_double(*cfg.get("d"), "d");
    const auto rows = nfdpc::run_gain_profile(d, grid.s_values, grid.nx, grid.pt, grid.layout, c.workers,
                                              grid.noise_power);

    const fs::path out_dir = c.out_dir;
    fs::create_directories(out_dir);
    const auto path = out_dir / "gains.csv";
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        nfdpc::write_gain_csv(out, rows);
    }
    write_manifest(out_dir, "gains", cfg, {path});
    std::cout << "gains: " << rows.size() << " rows -> " << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-forcing vs dirty-paper-coding precoding for near-field multiuser MISO"};
    app.require_subcommand(1);

    Common common;

    auto* region = app.add_subcommand("region", "Two-user ZF and DPC rate regions with areas");
    add_common(region, common);
    add_key_flag(region, common, "--points", "points", "Power-split samples per region boundary");
    region->add_flag_callback("--hull", [&] { common.flag_values.emplace_back("hull", "true"); },
                              "Also emit time-sharing (convex hull) regions");

    auto* contour = app.add_subcommand("contour", "DPC - ZF sum-rate difference over a (D, s) grid");
    add_common(contour, common);
    add_key_flag(contour, common, "--d", "d_values", "D axis, start:stop:count or log:start:stop:count");
    add_key_flag(contour, common, "--s", "s_values", "s axis, start:stop:count or log:start:stop:count");

    auto* gains = app.add_subcommand("gains", "alpha_k and r_kk^2 against inter-user spacing");
    add_common(gains, common);
    add_key_flag(gains, common, "--d", "d", "User distance D");
    add_key_flag(gains, common, "--s", "s_values", "s axis, start:stop:count");

    auto* sumrate = app.add_subcommand("sumrate", "Optimal ZF and DPC power allocations and sum rates");
    add_common(sumrate, common);
    sumrate->add_flag_callback("--greedy", [&] { common.flag_values.emplace_back("ordering", "greedy"); },
                               "Greedy norm ordering instead of exhaustive search");

    for (auto* sub : {region, sumrate}) {
        add_key_flag(sub, common, "--d", "d", "Distance D of the first user (or midpoint)");
        add_key_flag(sub, common, "--s", "s", "Inter-user spacing s");
        sub->add_flag_callback("--dump-channel", [&] { common.flag_values.emplace_back("dump_channel", "true"); },
                               "Write channel.csv (small arrays only)");
    }
    for (auto* sub : {region, contour, gains, sumrate}) {
        add_key_flag(sub, common, "--nx", "nx", "UPA elements along x (square unless ny is set)");
        add_key_flag(sub, common, "--layout", "layout", "colinear, coplanar or explicit");
        add_key_flag(sub, common, "--pt", "pt", "Transmit power budget");
    }

    double aperture = 0.0;
    double wavelength = 0.0;
    auto* ff = app.add_subcommand("ffboundary", "Far-field distance 2 D^2 / lambda");
    ff->add_option("--aperture", aperture, "Aperture size")->required();
    ff->add_option("--wavelength", wavelength, "Wavelength, same unit as aperture")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*ff) {
            std::cout << nfdpc::format_double(nfdpc::far_field_boundary(aperture, wavelength)) << '\n';
            return 0;
        }
        if (*region) return run_region(common, "region");
        if (*sumrate) return run_region(common, "sumrate");
        if (*contour) return run_contour(common);
        if (*gains) return run_gains(common);
    } catch (const nfdpc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\nknown config keys:";
        for (const auto& k : nfdpc::known_keys()) std::cerr << ' ' << k;
        std::cerr << "\n\n" << app.help();
        return 1;
    } catch (const nfdpc::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

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

#include "nfdpc/config.hpp"

#include "nfdpc/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace nfdpc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto end = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, end == std::string_view::npos ? end : end - pos)));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> d{
        {"nx", "500"},          {"spacing", "0.5"},   {"wavelength", "1"},  {"layout", "colinear"},
        {"d", "10"},            {"s", "0.2"},         {"pt", "10"},         {"noise_power", "1"},
        {"d_values", "log:5:100:40"}, {"s_values", "0.05:2:40"}, {"points", "4001"},
        {"ordering", "exhaustive"},   {"hull", "false"},         {"dump_channel", "false"},
    };
    return d;
}

std::string required(const KeyValueConfig& cfg, const std::string& key) {
    if (auto v = cfg.get(key)) return *v;
    if (key == "ny") return required(cfg, "nx");
    const auto it = defaults().find(key);
    if (it == defaults().end())
        throw ValidationError("config: missing key '" + key + "'");
    return it->second;
}

} // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{"nx",       "ny",       "spacing", "wavelength", "layout", "d",
                                               "s",        "positions", "pt",     "noise_power", "d_values",
                                               "s_values", "points",   "ordering", "hull",      "dump_channel"};
    return keys;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    const char* begin = text.data();
    if (!text.empty() && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError(std::string(what) + ": expected a number, got '" + std::string(text) + "'");
    return v;
}

long parse_int(std::string_view text, std::string_view what) {
    text = trim(text);
    long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ValidationError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ValidationError(std::string(what) + ": expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_range(std::string_view text) {
    text = trim(text);
    if (text.find(':') == std::string_view::npos) {
        std::vector<double> out;
        for (auto part : split(text, ','))
            out.push_back(parse_double(part, "range"));
        return out;
    }

    bool log_spaced = false;
    if (text.starts_with("log:")) {
        log_spaced = true;
        text.remove_prefix(4);
    }
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw ValidationError("range: expected start:stop:count, got '" + std::string(text) + "'");
    const double start = parse_double(parts[0], "range start");
    const double stop = parse_double(parts[1], "range stop");
    const long count = parse_int(parts[2], "range count");
    if (count < 1)
        throw ValidationError("range: count must be >= 1");
    if (log_spaced && !(start > 0.0 && stop > 0.0))
        throw ValidationError("range: log spacing needs positive endpoints");

    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double a = log_spaced ? std::log(start) : start;
    const double b = log_spaced ? std::log(stop) : stop;
    for (long i = 0; i < count; ++i) {
        const double u = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        out[static_cast<std::size_t>(i)] = log_spaced ? std::exp(u) : u;
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

std::vector<Position> parse_positions(std::string_view text) {
    std::vector<Position> out;
    for (auto triple : split(text, ';')) {
        if (triple.empty()) continue;
        const auto xyz = split(triple, ',');
        if (xyz.size() != 3)
            throw ValidationError("positions: expected x,y,z triples separated by ';', got '" + std::string(triple) +
                                  "'");
        out.push_back({parse_double(xyz[0], "positions"), parse_double(xyz[1], "positions"),
                       parse_double(xyz[2], "positions")});
    }
    if (out.empty())
        throw ValidationError("positions: empty list");
    return out;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string_view::npos)
            throw ValidationError(where + ": expected key = value");
        const std::string key(trim(view.substr(0, eq)));
        if (cfg.contains(key))
            throw ValidationError(where + ": duplicate key '" + key + "'");
        try {
            cfg.set(key, std::string(trim(view.substr(eq + 1))));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config: cannot open " + path.string());
    return parse(in, path.string());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ValidationError("unknown config key '" + key + "'");
    if (value.empty())
        throw ValidationError(key + ": empty value");
    values_[key] = value;
}

void KeyValueConfig::apply_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ValidationError("override '" + std::string(assignment) + "' is not key=value");
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::to_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_)
        out << k << " = " << v << '\n';
    return out.str();
}

KeyValueConfig with_defaults(const KeyValueConfig& cfg) {
    KeyValueConfig out = cfg;
    for (const auto& [k, v] : defaults())
        if (!out.contains(k)) out.set(k, v);
    if (!out.contains("ny")) out.set("ny", *out.get("nx"));
    return out;
}

ScenarioConfig scenario_from(const KeyValueConfig& cfg) {
    ScenarioConfig sc;
    const long nx = parse_int(required(cfg, "nx"), "nx");
    const long ny = parse_int(required(cfg, "ny"), "ny");
    if (nx < 1 || ny < 1 || nx > 100000 || ny > 100000)
        throw ValidationError("nx, ny: expected 1..100000");
    sc.array.nx = static_cast<int>(nx);
    sc.array.ny = static_cast<int>(ny);
    sc.array.spacing = parse_double(required(cfg, "spacing"), "spacing");
    sc.array.wavelength = parse_double(required(cfg, "wavelength"), "wavelength");
    sc.layout.kind = parse_layout_kind(required(cfg, "layout"));
    if (sc.layout.kind == LayoutKind::Explicit) {
        const auto pos = cfg.get("positions");
        if (!pos)
            throw ValidationError("positions: required for the explicit layout");
        sc.layout.positions = parse_positions(*pos);
    } else {
        sc.layout.d = parse_double(required(cfg, "d"), "d");
        sc.layout.s = parse_double(required(cfg, "s"), "s");
    }
    sc.pt = parse_double(required(cfg, "pt"), "pt");
    sc.noise_power = parse_double(required(cfg, "noise_power"), "noise_power");
    sc.validate();
    return sc;
}

SweepGrid sweep_from(const KeyValueConfig& cfg) {
    SweepGrid g;
    const long nx = parse_int(required(cfg, "nx"), "nx");
    if (nx < 1 || nx > 100000)
        throw ValidationError("nx: expected 1..100000");
    if (cfg.contains("ny") && *cfg.get("ny") != *cfg.get("nx"))
        throw ValidationError("ny: sweeps use a square array, ny must equal nx");
    g.nx = static_cast<int>(nx);
    g.layout = parse_layout_kind(required(cfg, "layout"));
    g.d_values = parse_range(required(cfg, "d_values"));
    g.s_values = parse_range(required(cfg, "s_values"));
    g.pt = parse_double(required(cfg, "pt"), "pt");
    g.noise_power = parse_double(required(cfg, "noise_power"), "noise_power");
    g.spacing = parse_double(required(cfg, "spacing"), "spacing");
    g.wavelength = parse_double(required(cfg, "wavelength"), "wavelength");
    g.validate();
    return g;
}

} // namespace nfdpc

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

#ifndef NFDPC_CONFIG_HPP
#define NFDPC_CONFIG_HPP

#include "nfdpc/channel.hpp"
#include "nfdpc/experiments.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfdpc {

// Flat `key = value` text, one entry per line; `#` starts a comment.
//
//   nx = 500
//   layout = colinear
//   d = 10
//   s = 0.2
//   positions = 0,0,10; 0,0,10.2     # explicit layout only
//   d_values = log:5:100:40           # sweep axes use range syntax
//
// Only known keys are accepted; see known_keys().
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
    static KeyValueConfig load(const std::filesystem::path& path);

    // Throws ValidationError for unknown keys.
    void set(const std::string& key, const std::string& value);
    // "key=value".
    void apply_override(std::string_view assignment);

    std::optional<std::string> get(const std::string& key) const;
    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

    // Same format as parse() accepts, keys sorted.
    std::string to_text() const;

private:
    std::map<std::string, std::string> values_;
};

const std::vector<std::string>& known_keys();

// Built-in defaults (the two-user 500 x 500 scenario) filled in under `cfg`.
KeyValueConfig with_defaults(const KeyValueConfig& cfg);

ScenarioConfig scenario_from(const KeyValueConfig& cfg);
SweepGrid sweep_from(const KeyValueConfig& cfg);

// "start:stop:count" (linear, inclusive), "log:start:stop:count" (geometric),
// a comma list "a,b,c", or a single number.
std::vector<double> parse_range(std::string_view text);

std::vector<Position> parse_positions(std::string_view text);

double parse_double(std::string_view text, std::string_view what);
long parse_int(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

} // namespace nfdpc

#endif

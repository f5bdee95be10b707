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

#ifndef NFDPC_FORMAT_HPP
#define NFDPC_FORMAT_HPP

#include <string>
#include <vector>

namespace nfdpc {

// Shortest round-trip decimal representation; NaN formats as an empty field.
std::string format_double(double value);

std::string join(const std::vector<std::string>& parts, char sep);

} // namespace nfdpc

#endif

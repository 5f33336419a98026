// Copyright 2026 The Whichway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <charconv>

#include "whichway/cli.hpp"

namespace whichway::cli {

std::string format_number(double x) {
    if (x == 0.0) {
        x = 0.0;  // drops the sign of -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

std::string grid_csv(const std::vector<GridRow> &rows) {
    std::string s = "p1,p2,DE,VE,sum_sq\n";
    for (const auto &r : rows) {
        s += format_number(r.p1);
        s += ',';
        s += format_number(r.p2);
        s += ',';
        s += format_number(r.extended_distinguishability);
        s += ',';
        s += format_number(r.extended_visibility);
        s += ',';
        s += format_number(r.sum_sq);
        s += '\n';
    }
    return s;
}

}  // namespace whichway::cli

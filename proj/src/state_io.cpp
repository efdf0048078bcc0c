// Copyright 2026 The ecsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecsim/state_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace ecsim {
namespace {

void write_meta(std::ostream& os, const Provenance& meta) {
    for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
}

bool next_data_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void malformed(const std::string& what) {
    throw std::runtime_error("malformed state dump: " + what);
}

}  // namespace

void write_state(std::ostream& os, const ModeAmplitudes& state, const Provenance& meta) {
    write_meta(os, meta);
    os << "modes 1 cutoff " << state.cutoff() << '\n';
    for (int n = 0; n <= state.cutoff(); ++n) {
        os << fmt::format("{} {:.17g} {:.17g}\n", n, state[n].real(), state[n].imag());
    }
}

void write_state(std::ostream& os, const TwoModeAmplitudes& state, const Provenance& meta) {
    write_meta(os, meta);
    os << "modes 2 cutoff " << state.cutoff() << '\n';
    for (int m = 0; m <= state.cutoff(); ++m) {
        for (int n = 0; n <= state.cutoff(); ++n) {
            const complex a = state(m, n);
            os << fmt::format("{} {} {:.17g} {:.17g}\n", m, n, a.real(), a.imag());
        }
    }
}

StateDump read_state(std::istream& is) {
    std::string line;
    if (!next_data_line(is, line)) malformed("missing header");

    std::istringstream header(line);
    std::string modes_kw, cutoff_kw;
    int modes = 0, cutoff = -1;
    if (!(header >> modes_kw >> modes >> cutoff_kw >> cutoff) || modes_kw != "modes" ||
        cutoff_kw != "cutoff" || cutoff < 0 || (modes != 1 && modes != 2)) {
        malformed("bad header '" + line + "'");
    }

    const auto dim = static_cast<std::size_t>(cutoff + 1);
    std::vector<complex> amps(modes == 1 ? dim : dim * dim);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!next_data_line(is, line)) malformed("truncated body");
        std::istringstream row(line);
        int m = 0, n = 0;
        double re = 0, im = 0;
        if (modes == 1) {
            if (!(row >> n >> re >> im)) malformed("bad row '" + line + "'");
            if (static_cast<std::size_t>(n) != i) malformed("rows out of order");
        } else {
            if (!(row >> m >> n >> re >> im)) malformed("bad row '" + line + "'");
            if (static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n) != i) {
                malformed("rows out of order");
            }
        }
        amps[i] = {re, im};
    }
    if (modes == 1) return ModeAmplitudes(cutoff, std::move(amps));
    return TwoModeAmplitudes(cutoff, std::move(amps));
}

}  // namespace ecsim

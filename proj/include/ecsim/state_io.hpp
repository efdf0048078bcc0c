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

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ecsim/fock.hpp"

namespace ecsim {

/// Plain-text state dump.
///
///     # optional comment lines (provenance)
///     modes 1 cutoff 30
///     0 0.60653065971263342 0
///     ...
///
/// Single-mode bodies carry "n re im" per line; two-mode bodies "m n re im",
/// row-major. Values are written with 17 significant digits so a dump reads
/// back bit-exact.
using StateDump = std::variant<ModeAmplitudes, TwoModeAmplitudes>;
using Provenance = std::vector<std::pair<std::string, std::string>>;

void write_state(std::ostream& os, const ModeAmplitudes& state, const Provenance& meta = {});
void write_state(std::ostream& os, const TwoModeAmplitudes& state, const Provenance& meta = {});

/// Parses a dump. Throws std::runtime_error on malformed input.
StateDump read_state(std::istream& is);

}  // namespace ecsim

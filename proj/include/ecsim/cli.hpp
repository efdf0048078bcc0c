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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecsim/fock.hpp"
#include "ecsim/random.hpp"

namespace ecsim::cli {

/// Bad command line. The message names the offending flag.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3 };

/// Fully resolved command line. Fields not used by `command` keep their
/// defaults and are ignored.
struct SweepConfig {
    std::string command;
    std::string help;  // non-empty when --help was requested

    // Global.
    int cutoff = kDefaultCutoff;
    bool adaptive_cutoff = true;
    double tail_tol = kDefaultTailTol;
    std::optional<std::string> out;
    std::string format;  // csv | json | svg
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
    unsigned threads = 0;

    // state / pnd
    std::string kind = "mixed";  // coherent | squeezed | css | ecs | noon | mixed
    std::string source = "mixed";  // pnd: mixed | ecs; j3-curve: ecs | mixed
    double beta = 0.45;
    double phi = 0.0;
    std::string r = "optimal";
    std::string theta = "optimal";
    double alpha = 1.0;
    int photons = 2;
    double noon_phase = 0.0;
    std::optional<double> nbar;
    std::string table = "both";  // joint | normalized | both

    // Grids.
    double nbar_min = 0.0;
    double nbar_max = 3.0;
    double step = 0.02;

    // j3-curve
    int restarts = 64;
    double tol = 1e-9;

    // similarity-sweep / click-sim
    double eta = 0.1;
    std::optional<double> eta_d;
    int detectors = 8;
    double x_min = 0.0;
    double x_max = 2.0;
    double beta_start = 0.75;
    double beta_end = 0.45;
    std::optional<double> fixed_nbar;
    int m = 2;
    int n = 0;
    long samples = 1000000;

    Truncation truncation() const { return {cutoff, tail_tol, adaptive_cutoff, 480}; }
    /// Canonical command line reproducing this configuration.
    std::string canonical_command() const;
};

/// argv[0] is the program name. Throws UsageError.
SweepConfig parse_args(const std::vector<std::string>& argv);

/// Runs a parsed configuration, writing to `config.out` or to `out`.
/// Warnings and errors go to `err`. Returns an ExitCode.
int run(const SweepConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error reporting; the body of main().
int main_entry(int argc, char** argv);

}  // namespace ecsim::cli

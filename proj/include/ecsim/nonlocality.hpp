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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ecsim/fock.hpp"
#include "ecsim/optics.hpp"
#include "ecsim/random.hpp"

namespace ecsim {

/// Complex amplitude of a coherent-state projector |mu><mu|.
struct PhaseSpacePoint {
    complex value{};
};

/// The four phase-space points of the J3 functional, in the order
/// alpha, beta, gamma, delta.
struct J3Params {
    std::array<PhaseSpacePoint, 4> points{};

    static J3Params uniform(complex mu) { return {{{{mu}, {mu}, {mu}, {mu}}}}; }
};

/// <psi| (|mu><mu| on `mode`) (x) I |psi>.
double q_single(const TwoModeAmplitudes& state, Mode mode, PhaseSpacePoint mu);

/// <psi| |mu><mu|_c (x) |nu><nu|_d |psi>.
double q_joint(const TwoModeAmplitudes& state, PhaseSpacePoint mu, PhaseSpacePoint nu);

/// J3 = Q(a) - Q(a,b) - Q(a,g) - Q(a,d) + Q(b,g) + Q(b,d) + Q(g,d)
///
/// The single-mode term is taken in mode c; in every joint term the first
/// point acts on mode c and the second on mode d.
double j3(const TwoModeAmplitudes& state, const J3Params& p);

/// Analytic gradient of j3 with respect to (Re, Im) of each point, ordered
/// (Re a, Im a, Re b, Im b, ...).
std::array<double, 8> j3_gradient(const TwoModeAmplitudes& state, const J3Params& p);

enum class Direction { minimize, maximize };

struct OptimizerSettings {
    int restarts = 64;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-9;
    double start_radius = 1.5;  // starts uniform in the disk |param| <= start_radius
    double bound = 3.0;         // search confined to |param| <= bound
    int max_evaluations = 20000;  // per restart
    unsigned threads = 0;         // 0 = hardware concurrency
};

struct J3Result {
    double value = 0.0;
    J3Params params;
    Direction direction = Direction::minimize;
    int restarts = 0;
    std::uint64_t seed = 0;
    int best_restart = 0;
    bool converged = false;   // the winning restart met the tolerance
    long iterations = 0;      // function evaluations over all restarts
};

/// Start point of every restart. Restart i draws from substream (seed, i),
/// so the first k starts do not depend on the total restart count.
std::vector<J3Params> j3_start_points(const OptimizerSettings& settings);

/// Seeded multi-start Nelder-Mead over the 8 real parameters. Restarts are
/// independent and reduced in index order, so the result is identical for
/// any thread count.
J3Result j3_extremize(const TwoModeAmplitudes& state, Direction direction,
                      const OptimizerSettings& settings = {});

struct J3Extrema {
    J3Result min;
    J3Result max;
};

J3Extrema j3_extremize_both(const TwoModeAmplitudes& state, const OptimizerSettings& settings = {});

enum class J3Source { ecs, mixed };

/// State entering the J3 scan at ECS mean photon number `n_bar`, after a
/// pi/2 phase shift on mode d. The ECS amplitude comes from inverting the
/// ECS mean photon number; the mixed state uses alpha / sqrt(2) coherent
/// light with optimally matched squeezed vacuum.
TwoModeAmplitudes j3_scan_state(double n_bar, J3Source source, const Truncation& t = {});

struct J3CurvePoint {
    double n_bar;
    J3Extrema extrema;
    int cutoff;
};

std::vector<J3CurvePoint> j3_curve(std::span<const double> n_bar_grid, J3Source source,
                                   const OptimizerSettings& settings = {},
                                   const Truncation& t = {});

}  // namespace ecsim

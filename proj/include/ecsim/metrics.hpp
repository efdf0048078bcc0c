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

#include <span>

#include "ecsim/fock.hpp"
#include "ecsim/states.hpp"

namespace ecsim {

class ClickPND;

/// Closed-form |<ECS_alpha | psi_out>|^2 for coherent input alpha / sqrt(2)
/// mixed with squeezed vacuum `sv`:
///
///     F = exp(-(|alpha|^2 / 2) cos(theta - 2 phi) tanh r)
///         / (cosh r cosh(|alpha|^2 / 2)),   phi = arg(alpha).
double fidelity_closed_form(complex alpha, const SqueezeParams& sv);

/// r = asinh(|alpha|^2) / 2, theta = 2 arg(alpha) + pi, theta wrapped to [0, 2 pi).
SqueezeParams optimal_squeezing(complex alpha);

/// |<A|B>|^2 after normalizing both. Throws DomainError on a zero state.
double two_mode_fidelity(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b);

/// |<CSS_{alpha/sqrt2} | 0>|^2: the fidelity reached when the squeezed
/// vacuum is replaced by vacuum.
double vacuum_baseline_fidelity(complex alpha, int cutoff = kDefaultCutoff);

struct FidelityReport {
    double closed_form;
    double numeric;
    int cutoff;
    double tail_mass;
    double discrepancy;
};

inline constexpr double kFidelityDiscrepancyWarning = 1e-6;

/// Both routes to the ECS fidelity of the mixed state. A discrepancy above
/// kFidelityDiscrepancyWarning is reported through warn().
FidelityReport fidelity_report(complex alpha, const SqueezeParams& sv, const Truncation& t = {});

/// Squared Bhattacharyya coefficient (sum sqrt(p q))^2 of two tables over
/// the same grid, each renormalized to unit mass first. Throws DomainError
/// on a size mismatch, negative entries, or a table with no mass.
double similarity(std::span<const double> p, std::span<const double> q);
double similarity(const JointPND& p, const JointPND& q);
double similarity(const ClickPND& p, const ClickPND& q);

}  // namespace ecsim

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

#include "ecsim/fock.hpp"

namespace ecsim {

/// Coherent amplitude beta = magnitude * exp(i phase).
struct CoherentParams {
    double magnitude = 0.0;
    double phase = 0.0;

    complex value() const { return std::polar(magnitude, phase); }
    static CoherentParams from_complex(complex beta) { return {std::abs(beta), std::arg(beta)}; }
};

/// Squeezed-vacuum parameters: squeezing r >= 0 and squeezing phase theta.
struct SqueezeParams {
    double r = 0.0;
    double theta = 0.0;
};

/// Entangled-coherent-state amplitude alpha. The normalization is always
/// derived from alpha.
struct EcsParams {
    complex alpha{};

    double normalization() const;
};

/// |beta> truncated at `cutoff`. Coefficients are the analytic ones; the
/// truncated norm is left below one.
ModeAmplitudes coherent(const CoherentParams& p, int cutoff);
ModeAmplitudes coherent(const CoherentParams& p, const Truncation& t);

/// Squeezed vacuum; odd photon numbers are exactly zero.
ModeAmplitudes squeezed_vacuum(const SqueezeParams& p, int cutoff);
ModeAmplitudes squeezed_vacuum(const SqueezeParams& p, const Truncation& t);

/// Even cat state N(|beta> + |-beta>).
ModeAmplitudes css(const CoherentParams& p, int cutoff);
ModeAmplitudes css(const CoherentParams& p, const Truncation& t);

/// N_alpha (|alpha, 0> + |0, alpha>).
TwoModeAmplitudes ecs(const EcsParams& p, int cutoff);
TwoModeAmplitudes ecs(const EcsParams& p, const Truncation& t);

/// (|N, 0> + e^{i phase} |0, N>) / sqrt(2). Throws DimensionError if N > cutoff.
TwoModeAmplitudes noon(int photons, int cutoff, double relative_phase = 0.0);

/// sum_n n |a_n|^2. Issues a warning when the tail exceeds 100 * tail_tol.
double mean_photon_number(const ModeAmplitudes& state, double tail_tol = kDefaultTailTol);
/// sum_{m,n} (m + n) |a_{mn}|^2.
double mean_photon_number(const TwoModeAmplitudes& state, double tail_tol = kDefaultTailTol);

/// Closed-form ECS mean photon number |alpha|^2 / (1 + exp(-|alpha|^2)).
double ecs_mean_photons(complex alpha);

/// Inverse of ecs_mean_photons: the |alpha|^2 whose ECS carries `n_bar`
/// photons on average.
double ecs_alpha_squared(double n_bar);

}  // namespace ecsim

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

#include "ecsim/metrics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "ecsim/detection.hpp"
#include "ecsim/diagnostics.hpp"
#include "ecsim/optics.hpp"

namespace ecsim {

double fidelity_closed_form(complex alpha, const SqueezeParams& sv) {
    const double half_a2 = 0.5 * std::norm(alpha);
    const double phi = std::arg(alpha);
    return std::exp(-half_a2 * std::cos(sv.theta - 2.0 * phi) * std::tanh(sv.r)) /
           (std::cosh(sv.r) * std::cosh(half_a2));
}

SqueezeParams optimal_squeezing(complex alpha) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double theta = std::fmod(2.0 * std::arg(alpha) + std::numbers::pi, two_pi);
    if (theta < 0.0) theta += two_pi;
    return {0.5 * std::asinh(std::norm(alpha)), theta};
}

double two_mode_fidelity(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (na == 0.0 || nb == 0.0) throw DomainError("fidelity of a zero state");
    return std::norm(inner_product2(a, b)) / (na * nb);
}

double vacuum_baseline_fidelity(complex alpha, int cutoff) {
    const auto cat = css(CoherentParams::from_complex(alpha / std::numbers::sqrt2), cutoff);
    return std::norm(inner_product(cat, ModeAmplitudes::fock(0, cutoff)));
}

FidelityReport fidelity_report(complex alpha, const SqueezeParams& sv, const Truncation& t) {
    const auto beta = CoherentParams::from_complex(alpha / std::numbers::sqrt2);
    const auto mixed = mix_cs_sv(beta, sv, t);
    const int cutoff = mixed.state.cutoff();
    const double closed = fidelity_closed_form(alpha, sv);
    const double numeric = two_mode_fidelity(ecs(EcsParams{alpha}, cutoff), mixed.state);
    const FidelityReport report{closed, numeric, cutoff, mixed.tail_mass,
                                std::abs(closed - numeric)};
    if (report.discrepancy > kFidelityDiscrepancyWarning) {
        warn(fmt::format("fidelity routes disagree by {:.3g} (closed {:.12g}, numeric {:.12g})",
                         report.discrepancy, closed, numeric));
    }
    return report;
}

double similarity(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DomainError("similarity: tables differ in size");
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw DomainError("similarity: negative entry");
        sp += p[i];
        sq += q[i];
    }
    if (sp <= 0.0 || sq <= 0.0) throw DomainError("similarity: empty support");
    double bc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
    bc /= std::sqrt(sp * sq);
    return std::min(bc * bc, 1.0);
}

double similarity(const JointPND& p, const JointPND& q) {
    if (p.cutoff() != q.cutoff()) throw DimensionError("similarity: cutoff mismatch");
    return similarity(p.probs(), q.probs());
}

double similarity(const ClickPND& p, const ClickPND& q) {
    if (p.detectors() != q.detectors()) throw DimensionError("similarity: detector mismatch");
    return similarity(p.probs(), q.probs());
}

}  // namespace ecsim

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

#include "ecsim/states.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "ecsim/diagnostics.hpp"

namespace ecsim {
namespace {

// Doubles the cutoff until the discarded mass is below tolerance.
template <class Build>
auto build_adaptive(const Truncation& t, Build&& build) {
    auto state = build(t.cutoff);
    if (!t.adaptive) return state;
    int cutoff = std::max(t.cutoff, 1);
    while (tail_mass(state) >= t.tail_tol) {
        if (cutoff >= t.max_cutoff) {
            throw TruncationError(fmt::format("tail mass {:.3g} still above {:.3g} at cutoff {}",
                                              tail_mass(state), t.tail_tol, cutoff));
        }
        cutoff = std::min(2 * cutoff, t.max_cutoff);
        state = build(cutoff);
    }
    return state;
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(fmt::format("{} must be finite and nonnegative, got {}", name, value));
    }
}

// e^{-|b|^2/2} b^n / sqrt(n!), evaluated in log space.
std::vector<complex> coherent_coefficients(const CoherentParams& p, int cutoff) {
    require_nonnegative(p.magnitude, "coherent magnitude");
    std::vector<complex> a(static_cast<std::size_t>(cutoff + 1));
    if (p.magnitude == 0.0) {
        a[0] = 1.0;
        return a;
    }
    const double log_mag = std::log(p.magnitude);
    const double half_mean = 0.5 * p.magnitude * p.magnitude;
    for (int n = 0; n <= cutoff; ++n) {
        const double log_abs = -half_mean + n * log_mag - 0.5 * log_factorial(n);
        a[static_cast<std::size_t>(n)] = std::polar(std::exp(log_abs), n * p.phase);
    }
    return a;
}

void warn_if_truncated(double tail, double tail_tol) {
    if (tail > 100.0 * tail_tol) {
        warn(fmt::format("tail mass {:.3g} exceeds 100x tolerance {:.3g}; moments are biased",
                         tail, tail_tol));
    }
}

}  // namespace

double EcsParams::normalization() const {
    return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-std::norm(alpha))));
}

ModeAmplitudes coherent(const CoherentParams& p, int cutoff) {
    if (cutoff < 0) throw DimensionError("cutoff must be nonnegative");
    return {cutoff, coherent_coefficients(p, cutoff)};
}

ModeAmplitudes coherent(const CoherentParams& p, const Truncation& t) {
    return build_adaptive(t, [&](int c) { return coherent(p, c); });
}

ModeAmplitudes squeezed_vacuum(const SqueezeParams& p, int cutoff) {
    if (cutoff < 0) throw DimensionError("cutoff must be nonnegative");
    require_nonnegative(p.r, "squeezing r");
    std::vector<complex> a(static_cast<std::size_t>(cutoff + 1));
    const double prefactor = 1.0 / std::sqrt(std::cosh(p.r));
    a[0] = prefactor;
    if (p.r > 0.0) {
        const double log_tanh = std::log(std::tanh(p.r));
        const double log2 = std::log(2.0);
        for (int m = 1; 2 * m <= cutoff; ++m) {
            const double log_abs =
                0.5 * log_factorial(2 * m) - m * log2 - log_factorial(m) + m * log_tanh;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            a[static_cast<std::size_t>(2 * m)] =
                sign * prefactor * std::polar(std::exp(log_abs), m * p.theta);
        }
    }
    return {cutoff, std::move(a)};
}

ModeAmplitudes squeezed_vacuum(const SqueezeParams& p, const Truncation& t) {
    return build_adaptive(t, [&](int c) { return squeezed_vacuum(p, c); });
}

ModeAmplitudes css(const CoherentParams& p, int cutoff) {
    if (cutoff < 0) throw DimensionError("cutoff must be nonnegative");
    auto a = coherent_coefficients(p, cutoff);
    const double norm =
        1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * p.magnitude * p.magnitude)));
    // |beta> + |-beta> doubles even terms and cancels odd ones exactly.
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = (n % 2 == 0) ? 2.0 * norm * a[n] : complex{};
    }
    return {cutoff, std::move(a)};
}

ModeAmplitudes css(const CoherentParams& p, const Truncation& t) {
    return build_adaptive(t, [&](int c) { return css(p, c); });
}

TwoModeAmplitudes ecs(const EcsParams& p, int cutoff) {
    if (cutoff < 0) throw DimensionError("cutoff must be nonnegative");
    const auto coeff = coherent_coefficients(CoherentParams::from_complex(p.alpha), cutoff);
    const double norm = p.normalization();
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    std::vector<complex> a(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        a[k * dim] += norm * coeff[k];  // |k, 0>
        a[k] += norm * coeff[k];        // |0, k>
    }
    return {cutoff, std::move(a)};
}

TwoModeAmplitudes ecs(const EcsParams& p, const Truncation& t) {
    return build_adaptive(t, [&](int c) { return ecs(p, c); });
}

TwoModeAmplitudes noon(int photons, int cutoff, double relative_phase) {
    if (photons < 1) throw DomainError("NOON photon number must be positive");
    if (photons > cutoff) {
        throw DimensionError(fmt::format("NOON N={} exceeds cutoff {}", photons, cutoff));
    }
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    const auto n = static_cast<std::size_t>(photons);
    std::vector<complex> a(dim * dim);
    a[n * dim] = M_SQRT1_2;
    a[n] = std::polar(M_SQRT1_2, relative_phase);
    return {cutoff, std::move(a)};
}

double mean_photon_number(const ModeAmplitudes& state, double tail_tol) {
    warn_if_truncated(tail_mass(state), tail_tol);
    double s = 0.0;
    for (int n = 1; n <= state.cutoff(); ++n) s += n * std::norm(state[n]);
    return s;
}

double mean_photon_number(const TwoModeAmplitudes& state, double tail_tol) {
    warn_if_truncated(tail_mass(state), tail_tol);
    double s = 0.0;
    for (int m = 0; m <= state.cutoff(); ++m) {
        for (int n = 0; n <= state.cutoff(); ++n) s += (m + n) * std::norm(state(m, n));
    }
    return s;
}

double ecs_mean_photons(complex alpha) {
    const double a2 = std::norm(alpha);
    return a2 / (1.0 + std::exp(-a2));
}

double ecs_alpha_squared(double n_bar) {
    require_nonnegative(n_bar, "mean photon number");
    if (n_bar == 0.0) return 0.0;
    // f(x) = x / (1 + e^{-x}) is increasing with n_bar <= f(x) at x = 2 n_bar + 1.
    double lo = 0.0;
    double hi = 2.0 * n_bar + 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid / (1.0 + std::exp(-mid)) < n_bar) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ecsim

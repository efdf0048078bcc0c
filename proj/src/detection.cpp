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

#include "ecsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "ecsim/metrics.hpp"
#include "ecsim/parallel.hpp"
#include "ecsim/random.hpp"

namespace ecsim {
namespace {

void check_eta(double eta, const char* name) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(fmt::format("{} must lie in [0, 1], got {}", name, eta));
    }
}

void check_weights(std::span<const double> w, int detectors, const char* name) {
    if (w.empty()) return;
    if (static_cast<int>(w.size()) != detectors) {
        throw DomainError(fmt::format("{} has {} entries for {} detectors", name, w.size(),
                                      detectors));
    }
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw DomainError(fmt::format("{} has a negative entry", name));
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError(fmt::format("{} sums to {:.15g}, not 1", name, sum));
    }
}

// Row m' holds the binomial survival distribution of m' photons.
std::vector<std::vector<double>> thinning_matrix(int cutoff, double eta) {
    std::vector<std::vector<double>> b(static_cast<std::size_t>(cutoff + 1));
    for (int from = 0; from <= cutoff; ++from) {
        auto& row = b[static_cast<std::size_t>(from)];
        row.assign(static_cast<std::size_t>(from + 1), 0.0);
        for (int k = 0; k <= from; ++k) {
            row[static_cast<std::size_t>(k)] = std::exp(log_binomial(from, k)) *
                                               std::pow(eta, k) * std::pow(1.0 - eta, from - k);
        }
    }
    return b;
}

}  // namespace

void DetectorConfig::validate() const {
    if (detectors < 1) throw DomainError("need at least one detector per mode");
    check_weights(weights_c, detectors, "weights_c");
    check_weights(weights_d, detectors, "weights_d");
    check_eta(eta_c, "eta_c");
    check_eta(eta_d, "eta_d");
}

std::vector<double> DetectorConfig::weights(Mode mode) const {
    const auto& w = (mode == Mode::c) ? weights_c : weights_d;
    if (!w.empty()) return w;
    return std::vector<double>(static_cast<std::size_t>(detectors), 1.0 / detectors);
}

bool DetectorConfig::uniform(Mode mode) const {
    return ((mode == Mode::c) ? weights_c : weights_d).empty();
}

ClickPND::ClickPND(int detectors, std::vector<double> probs)
    : detectors_(detectors), probs_(std::move(probs)) {
    const auto dim = static_cast<std::size_t>(detectors + 1);
    if (detectors < 1 || probs_.size() != dim * dim) throw DimensionError("bad ClickPND shape");
}

double ClickPND::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

JointPND loss_thinning(const JointPND& p, double eta_c, double eta_d) {
    check_eta(eta_c, "eta_c");
    check_eta(eta_d, "eta_d");
    const int cutoff = p.cutoff();
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    const auto bc = thinning_matrix(cutoff, eta_c);
    const auto bd = thinning_matrix(cutoff, eta_d);

    // Thin mode d first, then mode c.
    std::vector<double> half(dim * dim, 0.0);
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t from = 0; from < dim; ++from) {
            const double src = p(static_cast<int>(m), static_cast<int>(from));
            if (src == 0.0) continue;
            for (std::size_t n = 0; n <= from; ++n) half[m * dim + n] += src * bd[from][n];
        }
    }
    std::vector<double> out(dim * dim, 0.0);
    for (std::size_t from = 0; from < dim; ++from) {
        for (std::size_t m = 0; m <= from; ++m) {
            const double w = bc[from][m];
            if (w == 0.0) continue;
            for (std::size_t n = 0; n < dim; ++n) out[m * dim + n] += w * half[from * dim + n];
        }
    }
    return {cutoff, std::move(out)};
}

std::vector<double> click_distribution_uniform(int photons, int detectors) {
    if (photons < 0) throw DomainError("photon number must be nonnegative");
    if (detectors < 1) throw DomainError("need at least one detector");
    std::vector<double> out(static_cast<std::size_t>(detectors + 1), 0.0);
    const int kmax = std::min(photons, detectors);
    if (photons == 0) {
        out[0] = 1.0;
        return out;
    }
    for (int k = 1; k <= kmax; ++k) {
        // C(D,k) sum_j (-1)^j C(k,j) ((k-j)/D)^n counts surjections onto k detectors.
        double s = 0.0;
        for (int j = 0; j < k; ++j) {
            const double term = std::exp(log_binomial(k, j) +
                                         photons * std::log(static_cast<double>(k - j) / detectors));
            s += (j % 2 == 0) ? term : -term;
        }
        out[static_cast<std::size_t>(k)] = std::max(0.0, std::exp(log_binomial(detectors, k)) * s);
    }
    return out;
}

std::vector<double> click_distribution_weighted(int photons, std::span<const double> weights) {
    if (photons < 0) throw DomainError("photon number must be nonnegative");
    const int detectors = static_cast<int>(weights.size());
    if (detectors < 1) throw DomainError("need at least one detector");
    const auto np = static_cast<std::size_t>(photons + 1);
    const auto nk = static_cast<std::size_t>(detectors + 1);

    // f[p][k]: sum over assignments of p photons to the detectors seen so far
    // with k of them occupied, of prod w_i^{q_i} / q_i!. The multinomial
    // probability is n! f[n][k].
    std::vector<double> f(np * nk, 0.0), next(np * nk);
    f[0] = 1.0;
    std::vector<double> term(np);
    for (int i = 0; i < detectors; ++i) {
        const double w = weights[static_cast<std::size_t>(i)];
        term[0] = 1.0;
        for (std::size_t q = 1; q < np; ++q) term[q] = term[q - 1] * w / static_cast<double>(q);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t p = 0; p < np; ++p) {
            for (std::size_t k = 0; k <= static_cast<std::size_t>(i); ++k) {
                const double base = f[p * nk + k];
                if (base == 0.0) continue;
                next[p * nk + k] += base;
                for (std::size_t q = 1; p + q < np; ++q) {
                    next[(p + q) * nk + k + 1] += base * term[q];
                }
            }
        }
        std::swap(f, next);
    }
    const double scale = std::exp(log_factorial(photons));
    std::vector<double> out(nk);
    for (std::size_t k = 0; k < nk; ++k) out[k] = scale * f[(np - 1) * nk + k];
    return out;
}

std::vector<double> click_distribution_mode(int photons, const DetectorConfig& cfg, Mode mode) {
    cfg.validate();
    if (cfg.uniform(mode)) return click_distribution_uniform(photons, cfg.detectors);
    const auto w = cfg.weights(mode);
    return click_distribution_weighted(photons, w);
}

ClickPND apply_click_model(const JointPND& p, const DetectorConfig& cfg) {
    cfg.validate();
    const JointPND lossy =
        (cfg.eta_c < 1.0 || cfg.eta_d < 1.0) ? loss_thinning(p, cfg.eta_c, cfg.eta_d) : p;
    const int cutoff = lossy.cutoff();
    const auto nk = static_cast<std::size_t>(cfg.detectors + 1);

    std::vector<std::vector<double>> cc, cd;
    for (int n = 0; n <= cutoff; ++n) {
        cc.push_back(click_distribution_mode(n, cfg, Mode::c));
        cd.push_back(click_distribution_mode(n, cfg, Mode::d));
    }

    // Contract mode d, then mode c.
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    std::vector<double> half(dim * nk, 0.0);
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t n = 0; n < dim; ++n) {
            const double src = lossy(static_cast<int>(m), static_cast<int>(n));
            if (src == 0.0) continue;
            for (std::size_t k = 0; k < nk; ++k) half[m * nk + k] += src * cd[n][k];
        }
    }
    std::vector<double> out(nk * nk, 0.0);
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t kc = 0; kc < nk; ++kc) {
            const double w = cc[m][kc];
            if (w == 0.0) continue;
            for (std::size_t kd = 0; kd < nk; ++kd) out[kc * nk + kd] += w * half[m * nk + kd];
        }
    }
    return {cfg.detectors, std::move(out)};
}

ClickPND detected_ecs_reference(complex alpha, const DetectorConfig& cfg, const Truncation& t) {
    return apply_click_model(joint_pnd(ecs(EcsParams{alpha}, t)), cfg);
}

std::vector<double> sample_click_distribution(int photons, std::span<const double> weights,
                                              std::size_t samples, std::uint64_t seed) {
    if (photons < 0) throw DomainError("photon number must be nonnegative");
    if (weights.empty()) throw DomainError("need at least one detector");
    if (samples == 0) throw DomainError("need at least one sample");
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    const double total = cumulative.back();

    auto rng = substream(seed, static_cast<std::uint64_t>(photons));
    std::vector<std::uint64_t> histogram(weights.size() + 1, 0);
    std::vector<char> hit(weights.size());
    for (std::size_t s = 0; s < samples; ++s) {
        std::fill(hit.begin(), hit.end(), 0);
        std::size_t clicks = 0;
        for (int p = 0; p < photons; ++p) {
            const double u = uniform01(rng) * total;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            auto idx = static_cast<std::size_t>(it - cumulative.begin());
            if (idx >= hit.size()) idx = hit.size() - 1;
            if (!hit[idx]) {
                hit[idx] = 1;
                ++clicks;
            }
        }
        ++histogram[clicks];
    }
    std::vector<double> out(histogram.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = static_cast<double>(histogram[k]) / static_cast<double>(samples);
    }
    return out;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DomainError("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double sweep_beta(const SweepSpec& spec, double x) {
    if (spec.fixed_nbar) return std::sqrt(0.5 * ecs_alpha_squared(*spec.fixed_nbar));
    return spec.beta_start + (spec.beta_end - spec.beta_start) * x / spec.schedule_span;
}

std::vector<double> sweep_grid(double x_min, double x_max, double step) {
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    if (!(x_max >= x_min)) throw DomainError("grid maximum below minimum");
    std::vector<double> grid;
    for (long i = 0;; ++i) {
        const double x = x_min + static_cast<double>(i) * step;
        if (x > x_max + 1e-9 * step) break;
        grid.push_back(x);
    }
    return grid;
}

std::vector<SweepPoint> similarity_sweep(const SweepSpec& spec, unsigned threads) {
    spec.detector.validate();
    if (!(spec.schedule_span > 0.0)) throw DomainError("schedule span must be positive");
    const auto grid = sweep_grid(spec.x_min, spec.x_max, spec.step);
    if (spec.x_min < 0.0) throw DomainError("squeezed-vacuum fraction must be nonnegative");

    return detail::parallel_map<SweepPoint>(
        grid.size(),
        [&](std::size_t i) {
            const double x = grid[i];
            const double beta = sweep_beta(spec, x);
            if (!(beta >= 0.0)) throw DomainError("beta schedule went negative");
            const double alpha2 = 2.0 * beta * beta;
            const complex alpha = std::polar(std::sqrt(alpha2), spec.phase);
            SqueezeParams sv = optimal_squeezing(alpha);
            sv.r = 0.5 * std::asinh(x * alpha2);

            const auto mixed = mix_cs_sv(CoherentParams{beta, spec.phase}, sv, spec.truncation);
            const auto candidate = apply_click_model(joint_pnd(mixed.state), spec.detector);
            const auto reference = detected_ecs_reference(alpha, spec.detector, spec.truncation);
            return SweepPoint{x,
                              similarity(candidate, reference),
                              mixed.input_mean_photons,
                              beta,
                              sv.r,
                              mixed.tail_mass,
                              mixed.state.cutoff()};
        },
        threads);
}

}  // namespace ecsim

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
#include <optional>
#include <span>
#include <vector>

#include "ecsim/fock.hpp"
#include "ecsim/optics.hpp"

namespace ecsim {

/// Multiplexed photon-number-resolving detector: each mode is split over
/// `detectors` on/off detectors after a transmission loss eta.
struct DetectorConfig {
    int detectors = 8;
    std::vector<double> weights_c;  // empty means uniform
    std::vector<double> weights_d;  // empty means uniform
    double eta_c = 0.1;
    double eta_d = 0.1;

    /// Throws DomainError if weights or efficiencies are out of range.
    void validate() const;
    /// Splitter weights of one mode, uniform when unset.
    std::vector<double> weights(Mode mode) const;
    bool uniform(Mode mode) const;
};

/// Joint click-count distribution over (k_c, k_d) in [0, D]^2.
class ClickPND {
  public:
    ClickPND(int detectors, std::vector<double> probs);

    int detectors() const { return detectors_; }
    double operator()(int kc, int kd) const {
        return probs_[static_cast<std::size_t>(kc) * static_cast<std::size_t>(detectors_ + 1) +
                      static_cast<std::size_t>(kd)];
    }
    std::span<const double> probs() const { return probs_; }
    double total() const;

  private:
    int detectors_;
    std::vector<double> probs_;
};

/// Independent binomial thinning of each mode's photon number.
JointPND loss_thinning(const JointPND& p, double eta_c, double eta_d);

/// P(k clicks | n photons) for D equally weighted detectors, by
/// inclusion-exclusion.
std::vector<double> click_distribution_uniform(int photons, int detectors);

/// P(k clicks | n photons) for arbitrary splitter weights, by dynamic
/// programming over detectors.
std::vector<double> click_distribution_weighted(int photons, std::span<const double> weights);

/// Dispatches to the uniform closed form or the weighted recursion.
std::vector<double> click_distribution_mode(int photons, const DetectorConfig& cfg, Mode mode);

/// Loss (when eta < 1) followed by the click model on both modes.
ClickPND apply_click_model(const JointPND& p, const DetectorConfig& cfg);

/// Ideal ECS pushed through the same detection chain as a candidate state.
ClickPND detected_ecs_reference(complex alpha, const DetectorConfig& cfg,
                                const Truncation& t = {});

/// Monte-Carlo click histogram: each of `photons` photons lands on detector
/// i with probability weights[i]. Normalized to a distribution over [0, D].
std::vector<double> sample_click_distribution(int photons, std::span<const double> weights,
                                              std::size_t samples, std::uint64_t seed);

/// Total-variation distance between two distributions on the same support.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Squeezed-vacuum fraction sweep x = sinh(2r) / |alpha|^2, |alpha|^2 = 2 beta^2.
///
/// By default beta follows a straight line from `beta_start` at x = 0 to
/// `beta_end` at x = `schedule_span`. With `fixed_nbar` set, beta is held at
/// the value whose ECS (alpha = sqrt(2) beta) carries that mean photon number.
struct SweepSpec {
    double x_min = 0.0;
    double x_max = 2.0;
    double step = 0.05;
    double beta_start = 0.75;
    double beta_end = 0.45;
    double schedule_span = 2.0;
    std::optional<double> fixed_nbar;
    double phase = 0.0;
    DetectorConfig detector;
    Truncation truncation;
};

struct SweepPoint {
    double x;
    double similarity;
    double n_bar;  // mean photons of the mixed input, beta^2 + sinh^2 r
    double beta;
    double r;
    double tail_mass;
    int cutoff;
};

/// Coherent amplitude used at sweep coordinate x.
double sweep_beta(const SweepSpec& spec, double x);

/// Grid x_min, x_min + step, ..., up to x_max (inclusive within 1e-9 step).
std::vector<double> sweep_grid(double x_min, double x_max, double step);

std::vector<SweepPoint> similarity_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace ecsim

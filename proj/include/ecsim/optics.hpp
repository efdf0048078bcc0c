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

#include <optional>
#include <vector>

#include "ecsim/fock.hpp"
#include "ecsim/states.hpp"

namespace ecsim {

/// Output modes of the mixing beam splitter.
enum class Mode { c, d };

/// Lossless beam splitter with transmissivity T.
///
/// Convention (fixed): a^dag -> sqrt(T) c^dag + sqrt(1-T) d^dag,
///                     b^dag -> sqrt(1-T) c^dag - sqrt(T) d^dag.
/// At T = 1/2 this is the real symmetric map [[1, 1], [1, -1]] / sqrt(2),
/// which squares to the identity.
struct BeamSplitterSpec {
    double transmissivity = 0.5;
};

/// Applies the beam splitter to every Fock component of `in`. Photon number
/// is conserved per component, so inputs with m + n <= cutoff map onto the
/// grid exactly. Components that land beyond `out_cutoff` (default: the
/// input cutoff) are dropped and show up in tail_mass of the result.
TwoModeAmplitudes beam_splitter(const TwoModeAmplitudes& in, const BeamSplitterSpec& spec = {},
                                std::optional<int> out_cutoff = std::nullopt);

/// Multiplies the amplitude at (m, n) by exp(i angle k), k the photon
/// number of `mode`.
TwoModeAmplitudes phase_shift(const TwoModeAmplitudes& in, Mode mode, double angle);

struct MixedState {
    TwoModeAmplitudes state;    // renormalized output in modes c, d
    double input_mean_photons;  // |beta|^2 + sinh^2 r
    double tail_mass;           // discarded mass before renormalization
};

/// Coherent light in port a and squeezed vacuum in port b of a 50/50
/// beam splitter.
///
/// Without `adaptive`, a tail above 100 * tail_tol throws TruncationError
/// and a tail above tail_tol is reported through warn(). With `adaptive`
/// the cutoff doubles until the tail falls below tail_tol.
MixedState mix_cs_sv(const CoherentParams& cs, const SqueezeParams& sv, const Truncation& t = {});

JointPND joint_pnd(const TwoModeAmplitudes& state);

/// P(m, n) rescaled so each anti-diagonal m + n = N sums to one.
/// Anti-diagonals whose mass is below the floor are absent.
class PerNTable {
  public:
    PerNTable(int cutoff, std::vector<std::optional<double>> cells);

    int cutoff() const { return cutoff_; }
    /// Empty when the anti-diagonal through (m, n) is absent.
    std::optional<double> operator()(int m, int n) const {
        return cells_[static_cast<std::size_t>(m) * static_cast<std::size_t>(cutoff_ + 1) +
                      static_cast<std::size_t>(n)];
    }
    bool present(int total_photons) const;

  private:
    int cutoff_;
    std::vector<std::optional<double>> cells_;
};

inline constexpr double kPerNFloor = 1e-15;

/// Only anti-diagonals fully inside the grid (m + n <= cutoff) are
/// normalized; longer ones are cut by the truncation and marked absent.
PerNTable per_n_normalized(const JointPND& p, double floor_tol = kPerNFloor);

}  // namespace ecsim

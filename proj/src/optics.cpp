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

#include "ecsim/optics.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ecsim/diagnostics.hpp"

namespace ecsim {
namespace {

// ln(x), with ln(0) = -inf so that exponent 0 multiplies to a skip rather
// than NaN.
double safe_log(double x) {
    return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

double weight_term(int exponent, double log_base) {
    return exponent == 0 ? 0.0 : exponent * log_base;
}

}  // namespace

TwoModeAmplitudes beam_splitter(const TwoModeAmplitudes& in, const BeamSplitterSpec& spec,
                                std::optional<int> out_cutoff) {
    const double t = spec.transmissivity;
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError(fmt::format("transmissivity must lie in [0, 1], got {}", t));
    }
    const int n_in = in.cutoff();
    const int n_out = out_cutoff.value_or(n_in);
    if (n_out < 0) throw DimensionError("output cutoff must be nonnegative");

    const double log_t = 0.5 * safe_log(t);        // ln sqrt(T)
    const double log_s = 0.5 * safe_log(1.0 - t);  // ln sqrt(1 - T)
    const auto dim = static_cast<std::size_t>(n_out + 1);
    std::vector<complex> out(dim * dim);

    // a^dag^na b^dag^nb / sqrt(na! nb!) expands into
    //   sum_{i,j} C(na,i) C(nb,j) t^{i+nb-j} s^{na-i+j} (-1)^{nb-j}
    //             c^dag^{i+j} d^dag^{na+nb-i-j},
    // and c^dag^m d^dag^n |0> = sqrt(m! n!) |m, n>.
    for (int na = 0; na <= n_in; ++na) {
        for (int nb = 0; nb <= n_in; ++nb) {
            const complex amp = in(na, nb);
            if (amp == complex{}) continue;
            const int total = na + nb;
            const double log_in = -0.5 * (log_factorial(na) + log_factorial(nb));
            for (int i = 0; i <= na; ++i) {
                for (int j = 0; j <= nb; ++j) {
                    const int m = i + j;
                    const int n = total - m;
                    if (m > n_out || n > n_out) continue;
                    const double log_w = weight_term(i + nb - j, log_t) +
                                         weight_term(na - i + j, log_s);
                    if (std::isinf(log_w)) continue;
                    const double log_mag = log_binomial(na, i) + log_binomial(nb, j) + log_in +
                                           0.5 * (log_factorial(m) + log_factorial(n)) + log_w;
                    const double sign = ((nb - j) % 2 == 0) ? 1.0 : -1.0;
                    out[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n)] +=
                        sign * std::exp(log_mag) * amp;
                }
            }
        }
    }
    return {n_out, std::move(out)};
}

TwoModeAmplitudes phase_shift(const TwoModeAmplitudes& in, Mode mode, double angle) {
    const int dim = in.dim();
    std::vector<complex> out(in.amps().begin(), in.amps().end());
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const int k = (mode == Mode::c) ? m : n;
            out[static_cast<std::size_t>(m * dim + n)] *= std::polar(1.0, angle * k);
        }
    }
    return {in.cutoff(), std::move(out)};
}

MixedState mix_cs_sv(const CoherentParams& cs, const SqueezeParams& sv, const Truncation& t) {
    auto build = [&](int cutoff) {
        auto product = tensor_product(coherent(cs, cutoff), squeezed_vacuum(sv, cutoff));
        return beam_splitter(product, BeamSplitterSpec{0.5});
    };

    int cutoff = t.cutoff;
    auto out = build(cutoff);
    if (t.adaptive) {
        cutoff = std::max(cutoff, 1);
        while (tail_mass(out) >= t.tail_tol) {
            if (cutoff >= t.max_cutoff) break;
            cutoff = std::min(2 * cutoff, t.max_cutoff);
            out = build(cutoff);
        }
    }

    const double tail = tail_mass(out);
    if (tail > 100.0 * t.tail_tol) {
        throw TruncationError(fmt::format(
            "mixed state tail mass {:.3g} at cutoff {} exceeds 100x tolerance {:.3g}", tail,
            out.cutoff(), t.tail_tol));
    }
    if (tail > t.tail_tol) {
        warn(fmt::format("mixed state tail mass {:.3g} at cutoff {} exceeds tolerance {:.3g}",
                         tail, out.cutoff(), t.tail_tol));
    }
    const double sinh_r = std::sinh(sv.r);
    return {normalized(out), cs.magnitude * cs.magnitude + sinh_r * sinh_r, tail};
}

JointPND joint_pnd(const TwoModeAmplitudes& state) {
    std::vector<double> p(state.amps().size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state.amps()[i]);
    return {state.cutoff(), std::move(p)};
}

PerNTable::PerNTable(int cutoff, std::vector<std::optional<double>> cells)
    : cutoff_(cutoff), cells_(std::move(cells)) {
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    if (cutoff < 0 || cells_.size() != dim * dim) throw DimensionError("bad PerNTable shape");
}

bool PerNTable::present(int total_photons) const {
    if (total_photons < 0 || total_photons > cutoff_) return false;
    return (*this)(total_photons, 0).has_value();
}

PerNTable per_n_normalized(const JointPND& p, double floor_tol) {
    const int cutoff = p.cutoff();
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    std::vector<std::optional<double>> cells(dim * dim);
    for (int total = 0; total <= cutoff; ++total) {
        double mass = 0.0;
        for (int m = 0; m <= total; ++m) mass += p(m, total - m);
        if (mass < floor_tol) continue;
        for (int m = 0; m <= total; ++m) {
            cells[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(total - m)] =
                p(m, total - m) / mass;
        }
    }
    return {cutoff, std::move(cells)};
}

}  // namespace ecsim

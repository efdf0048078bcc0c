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

#include "ecsim/nonlocality.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "ecsim/diagnostics.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/optimize.hpp"
#include "ecsim/parallel.hpp"
#include "ecsim/states.hpp"

namespace ecsim {
namespace {

// <mu|j> = e^{-|mu|^2/2} conj(mu)^j / sqrt(j!), by recurrence.
void projector_row(complex mu, int cutoff, std::vector<complex>& out) {
    out.resize(static_cast<std::size_t>(cutoff + 1));
    const complex mc = std::conj(mu);
    out[0] = std::exp(-0.5 * std::norm(mu));
    for (int j = 1; j <= cutoff; ++j) {
        out[static_cast<std::size_t>(j)] =
            out[static_cast<std::size_t>(j - 1)] * mc / std::sqrt(static_cast<double>(j));
    }
}

// Derivatives of <mu|j> with respect to Re mu and Im mu.
void projector_row_derivatives(complex mu, const std::vector<complex>& row,
                               std::vector<complex>& d_re, std::vector<complex>& d_im) {
    const std::size_t n = row.size();
    d_re.resize(n);
    d_im.resize(n);
    const complex i_unit{0.0, 1.0};
    for (std::size_t j = 0; j < n; ++j) {
        const complex lower = (j == 0) ? complex{} : std::sqrt(static_cast<double>(j)) * row[j - 1];
        d_re[j] = -mu.real() * row[j] + lower;
        d_im[j] = -mu.imag() * row[j] - i_unit * lower;
    }
}

// v[k] = sum_j row[j] A(j, k): the mode-c projection of the state.
void contract_c(const TwoModeAmplitudes& state, const std::vector<complex>& row,
                std::vector<complex>& v) {
    const int dim = state.dim();
    v.assign(static_cast<std::size_t>(dim), complex{});
    const auto a = state.amps();
    for (int j = 0; j < dim; ++j) {
        const complex w = row[static_cast<std::size_t>(j)];
        const complex* src = a.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(dim);
        for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] += w * src[k];
    }
}

void contract_d(const TwoModeAmplitudes& state, const std::vector<complex>& row,
                std::vector<complex>& v) {
    const int dim = state.dim();
    v.assign(static_cast<std::size_t>(dim), complex{});
    const auto a = state.amps();
    for (int j = 0; j < dim; ++j) {
        complex s{};
        const complex* src = a.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(dim);
        for (int k = 0; k < dim; ++k) s += row[static_cast<std::size_t>(k)] * src[k];
        v[static_cast<std::size_t>(j)] = s;
    }
}

complex dot(const std::vector<complex>& a, const std::vector<complex>& b) {
    complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double squared_norm(const std::vector<complex>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

// Joint terms of J3 as (c-point, d-point, sign).
constexpr std::array<std::array<int, 3>, 6> kJointTerms{{
    {0, 1, -1}, {0, 2, -1}, {0, 3, -1}, {1, 2, +1}, {1, 3, +1}, {2, 3, +1},
}};

// Repeated J3 evaluation on one state. Amplitudes are kept as split real
// and imaginary arrays so the three mode-c contractions share one pass over
// the grid and vectorize.
class J3Evaluator {
  public:
    explicit J3Evaluator(const TwoModeAmplitudes& state)
        : cutoff_(state.cutoff()), dim_(static_cast<std::size_t>(state.dim())) {
        re_.resize(dim_ * dim_);
        im_.resize(dim_ * dim_);
        for (std::size_t i = 0; i < dim_ * dim_; ++i) {
            re_[i] = state.amps()[i].real();
            im_[i] = state.amps()[i].imag();
        }
        for (auto& v : proj_re_) v.resize(dim_);
        for (auto& v : proj_im_) v.resize(dim_);
    }

    double operator()(const J3Params& p) {
        for (std::size_t i = 0; i < 4; ++i) projector_row(p.points[i].value, cutoff_, rows_[i]);

        // alpha, beta, gamma appear on mode c.
        for (std::size_t i = 0; i < 3; ++i) {
            std::fill(proj_re_[i].begin(), proj_re_[i].end(), 0.0);
            std::fill(proj_im_[i].begin(), proj_im_[i].end(), 0.0);
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            const double* ar = re_.data() + j * dim_;
            const double* ai = im_.data() + j * dim_;
            for (std::size_t i = 0; i < 3; ++i) {
                const double wr = rows_[i][j].real();
                const double wi = rows_[i][j].imag();
                double* vr = proj_re_[i].data();
                double* vi = proj_im_[i].data();
                for (std::size_t k = 0; k < dim_; ++k) {
                    vr[k] += wr * ar[k] - wi * ai[k];
                    vi[k] += wr * ai[k] + wi * ar[k];
                }
            }
        }

        double value = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            value += proj_re_[0][k] * proj_re_[0][k] + proj_im_[0][k] * proj_im_[0][k];
        }
        for (const auto& [c, d, sign] : kJointTerms) {
            const auto& row = rows_[static_cast<std::size_t>(d)];
            const auto& vr = proj_re_[static_cast<std::size_t>(c)];
            const auto& vi = proj_im_[static_cast<std::size_t>(c)];
            double sr = 0.0, si = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                sr += row[k].real() * vr[k] - row[k].imag() * vi[k];
                si += row[k].real() * vi[k] + row[k].imag() * vr[k];
            }
            value += sign * (sr * sr + si * si);
        }
        return value;
    }

  private:
    int cutoff_;
    std::size_t dim_;
    std::vector<double> re_, im_;
    std::array<std::vector<complex>, 4> rows_;
    std::array<std::vector<double>, 3> proj_re_, proj_im_;
};

J3Params unpack(const std::vector<double>& x) {
    J3Params p;
    for (std::size_t i = 0; i < 4; ++i) p.points[i].value = {x[2 * i], x[2 * i + 1]};
    return p;
}

std::vector<double> pack(const J3Params& p) {
    std::vector<double> x(8);
    for (std::size_t i = 0; i < 4; ++i) {
        x[2 * i] = p.points[i].value.real();
        x[2 * i + 1] = p.points[i].value.imag();
    }
    return x;
}

}  // namespace

double q_single(const TwoModeAmplitudes& state, Mode mode, PhaseSpacePoint mu) {
    std::vector<complex> row, v;
    projector_row(mu.value, state.cutoff(), row);
    if (mode == Mode::c) {
        contract_c(state, row, v);
    } else {
        contract_d(state, row, v);
    }
    return squared_norm(v);
}

double q_joint(const TwoModeAmplitudes& state, PhaseSpacePoint mu, PhaseSpacePoint nu) {
    std::vector<complex> row_c, row_d, v;
    projector_row(mu.value, state.cutoff(), row_c);
    projector_row(nu.value, state.cutoff(), row_d);
    contract_c(state, row_c, v);
    return std::norm(dot(row_d, v));
}

double j3(const TwoModeAmplitudes& state, const J3Params& p) {
    J3Evaluator eval(state);
    return eval(p);
}

std::array<double, 8> j3_gradient(const TwoModeAmplitudes& state, const J3Params& p) {
    const int cutoff = state.cutoff();
    std::array<std::vector<complex>, 4> rows, d_re, d_im;
    std::array<std::vector<complex>, 4> proj, proj_re, proj_im;
    for (std::size_t i = 0; i < 4; ++i) {
        projector_row(p.points[i].value, cutoff, rows[i]);
        projector_row_derivatives(p.points[i].value, rows[i], d_re[i], d_im[i]);
        contract_c(state, rows[i], proj[i]);
        contract_c(state, d_re[i], proj_re[i]);
        contract_c(state, d_im[i], proj_im[i]);
    }

    std::array<double, 8> grad{};
    // Q(alpha) = sum_k |v_alpha[k]|^2.
    for (std::size_t k = 0; k < proj[0].size(); ++k) {
        grad[0] += 2.0 * std::real(std::conj(proj[0][k]) * proj_re[0][k]);
        grad[1] += 2.0 * std::real(std::conj(proj[0][k]) * proj_im[0][k]);
    }
    // Q(x, y) = |S|^2 with S = sum_k <y|k> v_x[k].
    for (const auto& [c, d, sign] : kJointTerms) {
        const auto ci = static_cast<std::size_t>(c);
        const auto di = static_cast<std::size_t>(d);
        const complex s = dot(rows[di], proj[ci]);
        const auto partial = [&](const complex& ds) { return 2.0 * sign * std::real(std::conj(s) * ds); };
        grad[2 * ci] += partial(dot(rows[di], proj_re[ci]));
        grad[2 * ci + 1] += partial(dot(rows[di], proj_im[ci]));
        grad[2 * di] += partial(dot(d_re[di], proj[ci]));
        grad[2 * di + 1] += partial(dot(d_im[di], proj[ci]));
    }
    return grad;
}

std::vector<J3Params> j3_start_points(const OptimizerSettings& settings) {
    if (settings.restarts < 1) throw DomainError("need at least one restart");
    std::vector<J3Params> starts;
    starts.reserve(static_cast<std::size_t>(settings.restarts));
    for (int i = 0; i < settings.restarts; ++i) {
        auto rng = substream(settings.seed, static_cast<std::uint64_t>(i));
        J3Params p;
        for (auto& point : p.points) {
            const double radius = settings.start_radius * std::sqrt(uniform01(rng));
            const double angle = 2.0 * std::numbers::pi * uniform01(rng);
            point.value = std::polar(radius, angle);
        }
        starts.push_back(p);
    }
    return starts;
}

J3Result j3_extremize(const TwoModeAmplitudes& state, Direction direction,
                      const OptimizerSettings& settings) {
    if (settings.restarts < 1) throw DomainError("need at least one restart");
    if (!(settings.bound > 0.0)) throw DomainError("search bound must be positive");
    const auto starts = j3_start_points(settings);
    const double sign = (direction == Direction::minimize) ? 1.0 : -1.0;

    NelderMeadOptions opts;
    opts.ftol = settings.tol;
    opts.max_evaluations = settings.max_evaluations;

    const double bound = settings.bound;
    const auto project = [bound](std::vector<double>& x) {
        for (std::size_t i = 0; i < x.size(); i += 2) {
            const double r = std::hypot(x[i], x[i + 1]);
            if (r > bound) {
                x[i] *= bound / r;
                x[i + 1] *= bound / r;
            }
        }
    };

    const auto runs = detail::parallel_map<NelderMeadResult>(
        starts.size(),
        [&](std::size_t i) {
            J3Evaluator eval(state);
            const auto objective = [&](const std::vector<double>& x) {
                return sign * eval(unpack(x));
            };
            return nelder_mead(objective, pack(starts[i]), opts, project);
        },
        settings.threads);

    J3Result result;
    result.direction = direction;
    result.restarts = settings.restarts;
    result.seed = settings.seed;
    std::size_t best = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        result.iterations += runs[i].evaluations;
        if (runs[i].value < runs[best].value) best = i;
    }
    result.best_restart = static_cast<int>(best);
    result.params = unpack(runs[best].x);
    result.value = sign * runs[best].value;
    result.converged = runs[best].converged;
    if (!result.converged) {
        warn(fmt::format("J3 {} did not converge within {} evaluations",
                         direction == Direction::minimize ? "minimization" : "maximization",
                         settings.max_evaluations));
    }
    return result;
}

J3Extrema j3_extremize_both(const TwoModeAmplitudes& state, const OptimizerSettings& settings) {
    return {j3_extremize(state, Direction::minimize, settings),
            j3_extremize(state, Direction::maximize, settings)};
}

TwoModeAmplitudes j3_scan_state(double n_bar, J3Source source, const Truncation& t) {
    const complex alpha{std::sqrt(ecs_alpha_squared(n_bar)), 0.0};
    TwoModeAmplitudes state = (source == J3Source::ecs)
                                  ? ecs(EcsParams{alpha}, t)
                                  : mix_cs_sv(CoherentParams::from_complex(alpha / std::numbers::sqrt2),
                                              optimal_squeezing(alpha), t)
                                        .state;
    return phase_shift(state, Mode::d, 0.5 * std::numbers::pi);
}

std::vector<J3CurvePoint> j3_curve(std::span<const double> n_bar_grid, J3Source source,
                                   const OptimizerSettings& settings, const Truncation& t) {
    std::vector<J3CurvePoint> out;
    out.reserve(n_bar_grid.size());
    for (double n_bar : n_bar_grid) {
        const auto state = j3_scan_state(n_bar, source, t);
        out.push_back({n_bar, j3_extremize_both(state, settings), state.cutoff()});
    }
    return out;
}

}  // namespace ecsim

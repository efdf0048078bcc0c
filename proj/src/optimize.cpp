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

#include "ecsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ecsim {
namespace {

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts,
                             const std::function<void(std::vector<double>&)>& project) {
    const std::size_t dim = x0.size();
    int evaluations = 0;
    auto eval = [&](std::vector<double>& x) {
        if (project) project(x);
        ++evaluations;
        return f(x);
    };

    auto build = [&](std::vector<double> center, double step) {
        Simplex s;
        s.points.push_back(center);
        s.values.push_back(eval(s.points.back()));
        for (std::size_t i = 0; i < dim; ++i) {
            auto p = center;
            p[i] += step;
            s.values.push_back(eval(p));
            s.points.push_back(std::move(p));
        }
        return s;
    };

    Simplex s = build(std::move(x0), opts.initial_step);
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        Simplex sorted;
        for (auto i : order) {
            sorted.points.push_back(std::move(s.points[i]));
            sorted.values.push_back(s.values[i]);
        }
        s = std::move(sorted);
    };

    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                d = std::max(d, std::abs(s.points[i][k] - s.points[0][k]));
            }
        }
        return d;
    };

    bool converged = false;
    int rebuilds = 0;
    double last_converged_value = 0.0;
    bool have_converged_value = false;

    while (evaluations < opts.max_evaluations) {
        sort_simplex();
        if (s.values[dim] - s.values[0] <= opts.ftol && diameter() <= opts.xtol) {
            // Restart around the best vertex until that stops paying off.
            if (have_converged_value && last_converged_value - s.values[0] <= opts.ftol) {
                converged = true;
                break;
            }
            if (rebuilds >= opts.max_rebuilds) {
                converged = true;
                break;
            }
            last_converged_value = s.values[0];
            have_converged_value = true;
            ++rebuilds;
            s = build(s.points[0], 0.2 * opts.initial_step);
            continue;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += s.points[i][k];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);

        const auto& worst = s.points[dim];
        for (std::size_t k = 0; k < dim; ++k) trial[k] = centroid[k] + (centroid[k] - worst[k]);
        const double f_reflect = eval(trial);

        if (f_reflect < s.values[0]) {
            for (std::size_t k = 0; k < dim; ++k) {
                trial2[k] = centroid[k] + 2.0 * (centroid[k] - worst[k]);
            }
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                s.points[dim] = trial2;
                s.values[dim] = f_expand;
            } else {
                s.points[dim] = trial;
                s.values[dim] = f_reflect;
            }
            continue;
        }
        if (f_reflect < s.values[dim - 1]) {
            s.points[dim] = trial;
            s.values[dim] = f_reflect;
            continue;
        }

        // Contraction: outside if the reflection improved on the worst point.
        const bool outside = f_reflect < s.values[dim];
        for (std::size_t k = 0; k < dim; ++k) {
            trial2[k] = outside ? centroid[k] + 0.5 * (trial[k] - centroid[k])
                                : centroid[k] + 0.5 * (worst[k] - centroid[k]);
        }
        const double f_contract = eval(trial2);
        if (f_contract < std::min(f_reflect, s.values[dim])) {
            s.points[dim] = trial2;
            s.values[dim] = f_contract;
            continue;
        }

        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                s.points[i][k] = s.points[0][k] + 0.5 * (s.points[i][k] - s.points[0][k]);
            }
            s.values[i] = eval(s.points[i]);
        }
    }

    sort_simplex();
    return {s.points[0], s.values[0], evaluations, converged};
}

}  // namespace ecsim

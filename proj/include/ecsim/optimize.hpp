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

#include <functional>
#include <vector>

namespace ecsim {

struct NelderMeadOptions {
    double ftol = 1e-9;            // absolute spread of simplex values
    double xtol = 1e-5;            // simplex diameter (max-norm)
    double initial_step = 0.25;
    int max_evaluations = 20000;
    int max_rebuilds = 3;          // fresh simplices around a converged point
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int evaluations;
    bool converged;
};

/// Derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). `project` is applied
/// to every trial point and may clamp it into a feasible set.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {},
                             const std::function<void(std::vector<double>&)>& project = {});

}  // namespace ecsim

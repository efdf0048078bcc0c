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

#include "ecsim/fock.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace ecsim {
namespace {

constexpr int kLogFactorialTable = 1024;

const std::array<double, kLogFactorialTable>& log_factorial_table() {
    static const auto table = [] {
        std::array<double, kLogFactorialTable> t{};
        for (int n = 0; n < kLogFactorialTable; ++n) {
            t[static_cast<std::size_t>(n)] = std::lgamma(static_cast<double>(n) + 1.0);
        }
        return t;
    }();
    return table;
}

void require_cutoff(int cutoff) {
    if (cutoff < 0) {
        throw DimensionError("cutoff must be nonnegative, got " + std::to_string(cutoff));
    }
}

template <class Container>
void require_finite(const Container& values) {
    for (const auto& v : values) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, complex>) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw DomainError("non-finite amplitude");
            }
        } else {
            if (!std::isfinite(v)) {
                throw DomainError("non-finite probability");
            }
        }
    }
}

void require_same_cutoff(int a, int b) {
    if (a != b) {
        throw DimensionError("cutoff mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

std::size_t grid_size(int cutoff) {
    const auto d = static_cast<std::size_t>(cutoff + 1);
    return d * d;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModeAmplitudes

ModeAmplitudes::ModeAmplitudes(int cutoff) : cutoff_(cutoff) {
    require_cutoff(cutoff);
    amps_.assign(static_cast<std::size_t>(cutoff + 1), complex{});
}

ModeAmplitudes::ModeAmplitudes(int cutoff, std::vector<complex> amps)
    : cutoff_(cutoff), amps_(std::move(amps)) {
    require_cutoff(cutoff);
    if (amps_.size() != static_cast<std::size_t>(cutoff + 1)) {
        throw DimensionError("expected " + std::to_string(cutoff + 1) + " amplitudes, got " +
                             std::to_string(amps_.size()));
    }
    require_finite(amps_);
}

ModeAmplitudes ModeAmplitudes::fock(int n, int cutoff) {
    if (n < 0 || n > cutoff) {
        throw DimensionError("Fock index " + std::to_string(n) + " outside [0, " +
                             std::to_string(cutoff) + "]");
    }
    std::vector<complex> a(static_cast<std::size_t>(cutoff + 1));
    a[static_cast<std::size_t>(n)] = 1.0;
    return {cutoff, std::move(a)};
}

complex ModeAmplitudes::at(int n) const {
    if (n < 0 || n > cutoff_) {
        throw DimensionError("index " + std::to_string(n) + " outside grid");
    }
    return (*this)[n];
}

double ModeAmplitudes::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

// ---------------------------------------------------------------------------
// TwoModeAmplitudes

TwoModeAmplitudes::TwoModeAmplitudes(int cutoff) : cutoff_(cutoff) {
    require_cutoff(cutoff);
    amps_.assign(grid_size(cutoff), complex{});
}

TwoModeAmplitudes::TwoModeAmplitudes(int cutoff, std::vector<complex> amps)
    : cutoff_(cutoff), amps_(std::move(amps)) {
    require_cutoff(cutoff);
    if (amps_.size() != grid_size(cutoff)) {
        throw DimensionError("expected " + std::to_string(grid_size(cutoff)) +
                             " amplitudes, got " + std::to_string(amps_.size()));
    }
    require_finite(amps_);
}

TwoModeAmplitudes TwoModeAmplitudes::fock(int m, int n, int cutoff) {
    require_cutoff(cutoff);
    if (m < 0 || n < 0 || m > cutoff || n > cutoff) {
        throw DimensionError("Fock index outside grid");
    }
    std::vector<complex> a(grid_size(cutoff));
    a[static_cast<std::size_t>(m) * static_cast<std::size_t>(cutoff + 1) +
      static_cast<std::size_t>(n)] = 1.0;
    return {cutoff, std::move(a)};
}

complex TwoModeAmplitudes::at(int m, int n) const {
    if (m < 0 || n < 0 || m > cutoff_ || n > cutoff_) {
        throw DimensionError("index outside grid");
    }
    return (*this)(m, n);
}

double TwoModeAmplitudes::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

// ---------------------------------------------------------------------------
// JointPND

JointPND::JointPND(int cutoff) : cutoff_(cutoff) {
    require_cutoff(cutoff);
    probs_.assign(grid_size(cutoff), 0.0);
}

JointPND::JointPND(int cutoff, std::vector<double> probs)
    : cutoff_(cutoff), probs_(std::move(probs)) {
    require_cutoff(cutoff);
    if (probs_.size() != grid_size(cutoff)) {
        throw DimensionError("expected " + std::to_string(grid_size(cutoff)) +
                             " probabilities, got " + std::to_string(probs_.size()));
    }
    require_finite(probs_);
    for (double p : probs_) {
        if (p < 0.0) throw DomainError("negative probability");
    }
}

double JointPND::at(int m, int n) const {
    if (m < 0 || n < 0 || m > cutoff_ || n > cutoff_) {
        throw DimensionError("index outside grid");
    }
    return (*this)(m, n);
}

double JointPND::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

// ---------------------------------------------------------------------------
// Free functions

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial of negative argument");
    if (n < kLogFactorialTable) return log_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw DomainError("log_binomial requires 0 <= k <= n");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

complex inner_product(const ModeAmplitudes& u, const ModeAmplitudes& v) {
    require_same_cutoff(u.cutoff(), v.cutoff());
    complex s{};
    for (int n = 0; n <= u.cutoff(); ++n) s += std::conj(u[n]) * v[n];
    return s;
}

complex inner_product2(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b) {
    require_same_cutoff(a.cutoff(), b.cutoff());
    complex s{};
    const auto x = a.amps();
    const auto y = b.amps();
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

TwoModeAmplitudes tensor_product(const ModeAmplitudes& u, const ModeAmplitudes& v) {
    require_same_cutoff(u.cutoff(), v.cutoff());
    const int dim = u.cutoff() + 1;
    std::vector<complex> out(grid_size(u.cutoff()));
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            out[static_cast<std::size_t>(m * dim + n)] = u[m] * v[n];
        }
    }
    return {u.cutoff(), std::move(out)};
}

double tail_mass(const ModeAmplitudes& state) { return 1.0 - state.norm_squared(); }

double tail_mass(const TwoModeAmplitudes& state) { return 1.0 - state.norm_squared(); }

ModeAmplitudes normalized(const ModeAmplitudes& state) {
    const double norm = std::sqrt(state.norm_squared());
    if (norm == 0.0) throw DomainError("cannot normalize the zero vector");
    std::vector<complex> a(state.amps().begin(), state.amps().end());
    for (auto& x : a) x /= norm;
    return {state.cutoff(), std::move(a)};
}

TwoModeAmplitudes normalized(const TwoModeAmplitudes& state) {
    const double norm = std::sqrt(state.norm_squared());
    if (norm == 0.0) throw DomainError("cannot normalize the zero vector");
    std::vector<complex> a(state.amps().begin(), state.amps().end());
    for (auto& x : a) x /= norm;
    return {state.cutoff(), std::move(a)};
}

ModeAmplitudes with_cutoff(const ModeAmplitudes& state, int cutoff) {
    require_cutoff(cutoff);
    std::vector<complex> a(static_cast<std::size_t>(cutoff + 1));
    const int keep = std::min(cutoff, state.cutoff());
    for (int n = 0; n <= keep; ++n) a[static_cast<std::size_t>(n)] = state[n];
    return {cutoff, std::move(a)};
}

TwoModeAmplitudes with_cutoff(const TwoModeAmplitudes& state, int cutoff) {
    require_cutoff(cutoff);
    const int dim = cutoff + 1;
    const int keep = std::min(cutoff, state.cutoff());
    std::vector<complex> a(grid_size(cutoff));
    for (int m = 0; m <= keep; ++m) {
        for (int n = 0; n <= keep; ++n) a[static_cast<std::size_t>(m * dim + n)] = state(m, n);
    }
    return {cutoff, std::move(a)};
}

}  // namespace ecsim

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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecsim {

using complex = std::complex<double>;

inline constexpr int kDefaultCutoff = 30;
inline constexpr double kDefaultTailTol = 1e-10;

/// Raised when two operands live on Fock grids of different size, or an
/// index exceeds the grid.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when the discarded probability beyond the cutoff is too large.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Cutoff policy shared by every constructor.
///
/// With `adaptive` set, constructors double the cutoff (starting from
/// `cutoff`) until the discarded mass drops below `tail_tol`, giving up at
/// `max_cutoff`.
struct Truncation {
    int cutoff = kDefaultCutoff;
    double tail_tol = kDefaultTailTol;
    bool adaptive = false;
    int max_cutoff = 480;
};

/// Single-mode pure state as dense amplitudes over |0>..|cutoff>.
class ModeAmplitudes {
  public:
    /// Zero vector on [0, cutoff].
    explicit ModeAmplitudes(int cutoff);
    ModeAmplitudes(int cutoff, std::vector<complex> amps);

    static ModeAmplitudes fock(int n, int cutoff);

    int cutoff() const { return cutoff_; }
    std::size_t size() const { return amps_.size(); }
    complex operator[](int n) const { return amps_[static_cast<std::size_t>(n)]; }
    complex at(int n) const;
    std::span<const complex> amps() const { return amps_; }

    double norm_squared() const;

  private:
    int cutoff_;
    std::vector<complex> amps_;
};

/// Two-mode pure state, amplitude C(m, n) for m photons in mode c and n in
/// mode d. Row-major over m.
class TwoModeAmplitudes {
  public:
    explicit TwoModeAmplitudes(int cutoff);
    TwoModeAmplitudes(int cutoff, std::vector<complex> amps);

    static TwoModeAmplitudes fock(int m, int n, int cutoff);

    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }
    complex operator()(int m, int n) const { return amps_[index(m, n)]; }
    complex at(int m, int n) const;
    std::span<const complex> amps() const { return amps_; }

    double norm_squared() const;

  private:
    std::size_t index(int m, int n) const {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(cutoff_ + 1) +
               static_cast<std::size_t>(n);
    }

    int cutoff_;
    std::vector<complex> amps_;
};

/// Joint photon-number distribution P(m, n) over the same grid as a
/// TwoModeAmplitudes.
class JointPND {
  public:
    explicit JointPND(int cutoff);
    JointPND(int cutoff, std::vector<double> probs);

    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }
    double operator()(int m, int n) const {
        return probs_[static_cast<std::size_t>(m) * static_cast<std::size_t>(cutoff_ + 1) +
                      static_cast<std::size_t>(n)];
    }
    double at(int m, int n) const;
    std::span<const double> probs() const { return probs_; }
    double total() const;

  private:
    int cutoff_;
    std::vector<double> probs_;
};

/// ln(n!), accurate to a few ulps.
double log_factorial(int n);

/// ln C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);

complex inner_product(const ModeAmplitudes& u, const ModeAmplitudes& v);
complex inner_product2(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b);
TwoModeAmplitudes tensor_product(const ModeAmplitudes& u, const ModeAmplitudes& v);

/// Probability missing from the truncated grid, 1 - sum |amp|^2.
double tail_mass(const ModeAmplitudes& state);
double tail_mass(const TwoModeAmplitudes& state);

/// Copy rescaled to unit norm. Throws DomainError for the zero vector.
ModeAmplitudes normalized(const ModeAmplitudes& state);
TwoModeAmplitudes normalized(const TwoModeAmplitudes& state);

/// Copy embedded into (or cut down to) a different cutoff.
ModeAmplitudes with_cutoff(const ModeAmplitudes& state, int cutoff);
TwoModeAmplitudes with_cutoff(const TwoModeAmplitudes& state, int cutoff);

}  // namespace ecsim

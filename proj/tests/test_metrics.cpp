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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ecsim/detection.hpp"
#include "ecsim/diagnostics.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/optics.hpp"
#include "ecsim/states.hpp"
#include "test_support.hpp"

using namespace ecsim;

TEST_CASE("fidelity_closed_form examples") {
    CHECK(fidelity_closed_form(0.0, {0.0, 0.0}) == 1.0);
    CHECK(std::abs(fidelity_closed_form(0.0, {0.5, 0.0}) - 0.886819) < 1e-6);

    const double a2 = ecs_alpha_squared(1.0);
    CHECK(std::abs(a2 - 1.2785) < 1e-4);
    const complex alpha = std::sqrt(a2);
    const double f = fidelity_closed_form(alpha, optimal_squeezing(alpha));
    CHECK(std::abs(f - 0.985) <= 0.005);
}

TEST_CASE("optimal_squeezing examples") {
    const auto one = optimal_squeezing(1.0);
    CHECK(std::abs(one.r - 0.440687) < 1e-6);
    CHECK(one.r == doctest::Approx(std::log(1.0 + std::sqrt(2.0)) / 2.0));
    CHECK(one.theta == doctest::Approx(std::numbers::pi));

    CHECK(optimal_squeezing(std::polar(0.8, 0.3)).theta == doctest::Approx(0.6 + std::numbers::pi));
    CHECK(optimal_squeezing(std::polar(0.8, 2.0)).theta ==
          doctest::Approx(4.0 + std::numbers::pi - 2.0 * std::numbers::pi));

    for (double a : {1e-2, 1e-3}) {
        CHECK(optimal_squeezing(a).r / (a * a / 2.0) == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("closed form peaks at the optimal squeezing on a grid") {
    for (complex alpha : {complex(0.7), std::polar(1.0, 0.5), std::polar(1.6, -1.0)}) {
        const double dr = 0.005, dt = 2.0 * std::numbers::pi / 720.0;
        double best = -1.0, best_r = 0.0, best_t = 0.0;
        for (double r = 0.0; r <= 1.5; r += dr) {
            for (int k = 0; k < 720; ++k) {
                const double f = fidelity_closed_form(alpha, {r, k * dt});
                if (f > best) {
                    best = f;
                    best_r = r;
                    best_t = k * dt;
                }
            }
        }
        const auto opt = optimal_squeezing(alpha);
        CHECK(std::abs(best_r - opt.r) <= dr);
        const double dtheta = std::remainder(best_t - opt.theta, 2.0 * std::numbers::pi);
        CHECK(std::abs(dtheta) <= dt);
        CHECK(fidelity_closed_form(alpha, opt) >= best);
    }
}

TEST_CASE("closed form agrees with the numeric overlap") {
    Truncation t;
    t.adaptive = true;
    for (complex alpha : {complex(0.0), complex(0.5), std::polar(1.3, 0.9)}) {
        for (SqueezeParams sv : {optimal_squeezing(alpha), SqueezeParams{0.4, 2.5}}) {
            const auto rep = fidelity_report(alpha, sv, t);
            CHECK(rep.discrepancy < 1e-8);
            CHECK(rep.closed_form == doctest::Approx(fidelity_closed_form(alpha, sv)));
            CHECK(rep.tail_mass < t.tail_tol);
        }
    }
}

TEST_CASE("fidelity_report warns when the routes disagree") {
    reset_warning_count();
    std::string last;
    set_warning_handler([&](const std::string& m) { last = m; });
    Truncation coarse;
    coarse.cutoff = 4;
    coarse.tail_tol = 1.0;
    const auto rep = fidelity_report(1.5, optimal_squeezing(1.5), coarse);
    CHECK(rep.discrepancy > kFidelityDiscrepancyWarning);
    CHECK(warning_count() >= 1);
    CHECK(last.find("disagree") != std::string::npos);
    set_warning_handler({});
}

TEST_CASE("vacuum baseline") {
    CHECK(vacuum_baseline_fidelity(0.0) == doctest::Approx(1.0));
    double prev = 2.0;
    for (double a = 0.0; a <= 2.0; a += 0.05) {
        const double v = vacuum_baseline_fidelity(a);
        CHECK(v == doctest::Approx(1.0 / std::cosh(a * a / 2.0)).epsilon(1e-12));
        CHECK(v < prev);
        prev = v;
    }
    for (double nb = 0.02; nb <= 3.0; nb += 0.02) {
        const complex alpha = std::sqrt(ecs_alpha_squared(nb));
        CHECK(vacuum_baseline_fidelity(alpha) < fidelity_closed_form(alpha, optimal_squeezing(alpha)));
    }
}

TEST_CASE("two_mode_fidelity") {
    auto rng = testing::rng_for(21);
    const auto a = testing::random_two_mode(rng, 5);
    CHECK(two_mode_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(two_mode_fidelity(TwoModeAmplitudes::fock(1, 0, 3), TwoModeAmplitudes::fock(0, 1, 3)) == 0.0);

    const auto b = testing::random_two_mode(rng, 5);
    const double f = two_mode_fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    std::vector<complex> amps(b.amps().begin(), b.amps().end());
    for (auto& x : amps) x *= std::polar(1.0, 1.3);
    const TwoModeAmplitudes global(5, amps);
    CHECK(two_mode_fidelity(a, global) == doctest::Approx(f).epsilon(1e-14));
    CHECK(two_mode_fidelity(global, a) == doctest::Approx(f).epsilon(1e-14));

    CHECK_THROWS_AS(two_mode_fidelity(a, TwoModeAmplitudes(5)), DomainError);
}

TEST_CASE("similarity examples") {
    const std::vector<double> p{0.5, 0.5, 0.0};
    const std::vector<double> q{1.0, 0.0, 0.0};
    const std::vector<double> r{0.0, 0.0, 2.0};
    CHECK(similarity(p, p) == doctest::Approx(1.0));
    CHECK(similarity(p, r) == 0.0);
    CHECK(similarity(p, q) == doctest::Approx(0.5));
    CHECK_THROWS_AS(similarity(p, std::vector<double>(3, 0.0)), DomainError);
    CHECK_THROWS_AS(similarity(p, std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(similarity(p, std::vector<double>{1.0, -0.5, 0.5}), DomainError);
}

TEST_CASE("similarity properties on random tables") {
    auto rng = testing::rng_for(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(16), q(16);
        for (auto& x : p) x = u(rng) < 0.3 ? 0.0 : u(rng);
        for (auto& x : q) x = u(rng) < 0.3 ? 0.0 : u(rng);
        p[0] += 0.1;
        q[0] += 0.1;
        const double s = similarity(p, q);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0 + 1e-15);
        CHECK(s == doctest::Approx(similarity(q, p)).epsilon(1e-14));
        std::vector<double> scaled = p;
        for (auto& x : scaled) x *= 3.7;
        CHECK(similarity(p, scaled) == doctest::Approx(1.0).epsilon(1e-14));
        if (p != q) CHECK(s < 1.0);
    }
}

TEST_CASE("similarity on tables") {
    const auto e = joint_pnd(ecs({1.0}, 10));
    CHECK(similarity(e, e) == doctest::Approx(1.0));
    CHECK_THROWS_AS(similarity(e, joint_pnd(ecs({1.0}, 11))), DimensionError);

    DetectorConfig cfg;
    const auto c = apply_click_model(e, cfg);
    CHECK(similarity(c, c) == doctest::Approx(1.0));
}

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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ecsim/detection.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/states.hpp"
#include "test_support.hpp"

using namespace ecsim;
using testing::rng_for;

namespace {

JointPND delta(int m, int n, int cutoff) {
    std::vector<double> p(static_cast<std::size_t>((cutoff + 1) * (cutoff + 1)), 0.0);
    p[static_cast<std::size_t>(m * (cutoff + 1) + n)] = 1.0;
    return {cutoff, p};
}

JointPND random_pnd(std::mt19937_64& rng, int cutoff) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(static_cast<std::size_t>((cutoff + 1) * (cutoff + 1)));
    for (auto& x : p) x = u(rng);
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= s;
    return {cutoff, p};
}

std::vector<double> random_weights(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (auto& x : w) x = u(rng);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= s;
    return w;
}

// Brute-force enumeration of every photon-to-detector assignment.
std::vector<double> enumerate_clicks(int photons, const std::vector<double>& w) {
    const int d = static_cast<int>(w.size());
    std::vector<double> out(static_cast<std::size_t>(d + 1), 0.0);
    std::vector<int> assign(static_cast<std::size_t>(photons), 0);
    while (true) {
        double prob = 1.0;
        std::vector<bool> hit(static_cast<std::size_t>(d), false);
        for (int a : assign) {
            prob *= w[static_cast<std::size_t>(a)];
            hit[static_cast<std::size_t>(a)] = true;
        }
        out[static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true))] += prob;
        int i = 0;
        while (i < photons && ++assign[static_cast<std::size_t>(i)] == d) assign[static_cast<std::size_t>(i++)] = 0;
        if (i == photons) break;
    }
    return out;
}

}  // namespace

TEST_CASE("loss_thinning examples") {
    auto rng = rng_for(41);
    const auto p = random_pnd(rng, 6);
    const auto same = loss_thinning(p, 1.0, 1.0);
    for (std::size_t i = 0; i < p.probs().size(); ++i) CHECK(same.probs()[i] == p.probs()[i]);

    const auto one = loss_thinning(delta(1, 0, 3), 0.1, 0.1);
    CHECK(one(1, 0) == doctest::Approx(0.1));
    CHECK(one(0, 0) == doctest::Approx(0.9));

    const auto two = loss_thinning(delta(2, 0, 3), 0.1, 0.5);
    CHECK(two(2, 0) == doctest::Approx(0.01));
    CHECK(two(1, 0) == doctest::Approx(0.18));
    CHECK(two(0, 0) == doctest::Approx(0.81));

    const auto both = loss_thinning(delta(1, 2, 3), 0.3, 0.6);
    CHECK(both(1, 2) == doctest::Approx(0.3 * 0.36));
    CHECK(both(0, 1) == doctest::Approx(0.7 * 2 * 0.6 * 0.4));
}

TEST_CASE("loss_thinning is stochastic and composes") {
    auto rng = rng_for(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_pnd(rng, 12);
        const double e1 = u(rng), e2 = u(rng), f1 = u(rng), f2 = u(rng);
        const auto once = loss_thinning(p, e1, f1);
        CHECK(std::abs(once.total() - p.total()) < 1e-12);
        const auto twice = loss_thinning(once, e2, f2);
        const auto direct = loss_thinning(p, e1 * e2, f1 * f2);
        for (std::size_t i = 0; i < p.probs().size(); ++i) {
            CHECK(std::abs(twice.probs()[i] - direct.probs()[i]) < 1e-10);
        }
    }
    CHECK_THROWS_AS(loss_thinning(random_pnd(rng, 2), 1.2, 0.5), DomainError);
}

TEST_CASE("click distribution examples") {
    DetectorConfig cfg;
    const auto zero = click_distribution_mode(0, cfg, Mode::c);
    CHECK(zero[0] == 1.0);
    const auto two = click_distribution_mode(2, cfg, Mode::c);
    REQUIRE(two.size() == 9);
    CHECK(two[1] == doctest::Approx(1.0 / 8.0));
    CHECK(two[2] == doctest::Approx(7.0 / 8.0));

    auto rng = rng_for(43);
    cfg.weights_d = random_weights(rng, 8);
    const auto single = click_distribution_mode(1, cfg, Mode::d);
    CHECK(single[1] == doctest::Approx(1.0));
}

TEST_CASE("click distributions match brute-force enumeration") {
    auto rng = rng_for(44);
    for (int d : {1, 2, 3, 4}) {
        const auto w = random_weights(rng, d);
        for (int n = 0; n <= 6; ++n) {
            const auto got = click_distribution_weighted(n, w);
            const auto ref = enumerate_clicks(n, w);
            for (int k = 0; k <= d; ++k) CHECK(std::abs(got[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]) < 1e-12);
        }
    }
}

TEST_CASE("click distributions are normalized with the right support") {
    auto rng = rng_for(45);
    for (int d = 1; d <= 16; ++d) {
        const auto w = random_weights(rng, d);
        for (int n = 0; n <= 60; ++n) {
            const auto p = click_distribution_weighted(n, w);
            REQUIRE(p.size() == static_cast<std::size_t>(d + 1));
            CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-10);
            for (int k = 0; k <= d; ++k) {
                CHECK(p[static_cast<std::size_t>(k)] >= -1e-15);
                if (k > std::min(n, d)) CHECK(p[static_cast<std::size_t>(k)] == 0.0);
            }
            const auto q = click_distribution_uniform(n, d);
            CHECK(std::abs(std::accumulate(q.begin(), q.end(), 0.0) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("uniform closed form agrees with the weighted recursion") {
    for (int d = 1; d <= 16; ++d) {
        const std::vector<double> w(static_cast<std::size_t>(d), 1.0 / d);
        for (int n = 0; n <= 30; ++n) {
            const auto a = click_distribution_uniform(n, d);
            const auto b = click_distribution_weighted(n, w);
            for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-10);
        }
    }
}

TEST_CASE("Monte-Carlo clicks reproduce the model") {
    auto rng = rng_for(46);
    const std::vector<double> uniform(8, 0.125);
    const auto skew = random_weights(rng, 8);
    for (int n : {2, 5, 12}) {
        for (const auto* w : {&uniform, &skew}) {
            const auto mc = sample_click_distribution(n, *w, 1000000, 99 + n);
            CHECK(total_variation(mc, click_distribution_weighted(n, *w)) <= 3e-3);
        }
    }
    CHECK(sample_click_distribution(3, uniform, 1000, 5) == sample_click_distribution(3, uniform, 1000, 5));
}

TEST_CASE("apply_click_model examples") {
    DetectorConfig ideal;
    ideal.eta_c = ideal.eta_d = 1.0;
    const auto vac = apply_click_model(delta(0, 0, 4), ideal);
    CHECK(vac(0, 0) == 1.0);
    const auto two = apply_click_model(delta(2, 0, 4), ideal);
    CHECK(two(1, 0) == doctest::Approx(1.0 / 8.0));
    CHECK(two(2, 0) == doctest::Approx(7.0 / 8.0));

    auto rng = rng_for(47);
    const auto p = random_pnd(rng, 10);
    DetectorConfig lossy;
    lossy.weights_c = random_weights(rng, 8);
    lossy.eta_d = 0.4;
    const auto c = apply_click_model(p, lossy);
    CHECK(c.detectors() == 8);
    CHECK(std::abs(c.total() - 1.0) < 1e-9);
    for (double x : c.probs()) CHECK(x >= 0.0);

    DetectorConfig bad;
    bad.weights_c = {0.5, 0.5};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.weights_c.clear();
    bad.eta_c = -0.1;
    CHECK_THROWS_AS(apply_click_model(p, bad), DomainError);
}

TEST_CASE("detected ECS reference") {
    DetectorConfig cfg;
    const auto vac = detected_ecs_reference(0.0, cfg);
    CHECK(vac(0, 0) == doctest::Approx(1.0));

    const auto ref = detected_ecs_reference(std::sqrt(2.0) * 0.6, cfg);
    for (int a = 1; a <= 8; ++a) {
        for (int b = 1; b <= 8; ++b) CHECK(ref(a, b) == 0.0);
        CHECK(ref(a, 0) == doctest::Approx(ref(0, a)).epsilon(1e-12));
    }
    CHECK(ref(1, 0) > 0.0);
    CHECK(std::abs(ref.total() - 1.0) < 1e-9);
}

TEST_CASE("similarity sweep peaks at unit squeezed-vacuum fraction") {
    SweepSpec spec;
    const auto points = similarity_sweep(spec);
    REQUIRE(points.size() == 41);
    CHECK(points.front().x == 0.0);
    CHECK(points.back().x == doctest::Approx(2.0));
    const auto best = std::max_element(points.begin(), points.end(),
                                       [](const auto& a, const auto& b) { return a.similarity < b.similarity; });
    CHECK(std::abs(best->x - 1.0) <= spec.step + 1e-12);
    CHECK(best->similarity >= 0.98);
    CHECK(points.front().similarity < best->similarity);
    CHECK(points.front().r == 0.0);
    CHECK(points.front().beta == doctest::Approx(0.75));
    CHECK(points.back().beta == doctest::Approx(0.45));
    for (const auto& p : points) {
        CHECK(p.n_bar == doctest::Approx(p.beta * p.beta + std::pow(std::sinh(p.r), 2)));
        if (p.x > 0.0) CHECK(std::sinh(2.0 * p.r) / (2.0 * p.beta * p.beta) == doctest::Approx(p.x));
    }

    const auto x0 = points.front();
    const double alpha = std::sqrt(2.0) * x0.beta;
    const auto direct = similarity(apply_click_model(joint_pnd(mix_cs_sv({x0.beta, 0.0}, {0.0, 0.0}).state),
                                                     spec.detector),
                                   detected_ecs_reference(alpha, spec.detector));
    CHECK(x0.similarity == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("fixed photon-number sweep") {
    SweepSpec spec;
    spec.fixed_nbar = 0.15;
    spec.step = 0.1;
    const double beta = sweep_beta(spec, 0.0);
    CHECK(ecs_mean_photons(std::sqrt(2.0) * beta) == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(sweep_beta(spec, 1.7) == beta);
    const auto points = similarity_sweep(spec);
    const auto best = std::max_element(points.begin(), points.end(),
                                       [](const auto& a, const auto& b) { return a.similarity < b.similarity; });
    CHECK(std::abs(best->x - 1.0) <= spec.step + 1e-12);
    CHECK(best->similarity >= 0.98);
}

TEST_CASE("sweep results do not depend on thread count") {
    SweepSpec spec;
    spec.step = 0.25;
    const auto a = similarity_sweep(spec, 1);
    const auto b = similarity_sweep(spec, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].similarity == b[i].similarity);
}

TEST_CASE("sweep_grid") {
    const auto g = sweep_grid(0.0, 1.0, 0.1);
    REQUIRE(g.size() == 11);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(sweep_grid(0.5, 0.5, 0.1).size() == 1);
    CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(sweep_grid(1.0, 0.0, 0.1), DomainError);
}

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

#include "ecsim/diagnostics.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/optics.hpp"
#include "ecsim/states.hpp"
#include "test_support.hpp"

using namespace ecsim;
using ecsim::testing::linear_optics_element;
using ecsim::testing::random_two_mode;
using ecsim::testing::rng_for;

namespace {

TwoModeAmplitudes reference_beam_splitter(const TwoModeAmplitudes& in, double t) {
    const double s = std::sqrt(t), c = std::sqrt(1.0 - t);
    const std::array<std::array<double, 2>, 2> u{{{s, c}, {c, -s}}};
    const int cut = in.cutoff();
    std::vector<complex> out(static_cast<std::size_t>(in.dim() * in.dim()));
    for (int m = 0; m <= cut; ++m) {
        for (int n = 0; n <= cut; ++n) {
            complex acc{};
            for (int na = 0; na <= m + n; ++na) {
                const int nb = m + n - na;
                if (na > cut || nb > cut) continue;
                acc += linear_optics_element(u, na, nb, m, n) * in(na, nb);
            }
            out[static_cast<std::size_t>(m * in.dim() + n)] = acc;
        }
    }
    return {cut, std::move(out)};
}

double max_abs_diff(const TwoModeAmplitudes& a, const TwoModeAmplitudes& b) {
    double d = 0.0;
    for (int m = 0; m < a.dim(); ++m) {
        for (int n = 0; n < a.dim(); ++n) d = std::max(d, std::abs(a(m, n) - b(m, n)));
    }
    return d;
}

}  // namespace

TEST_CASE("beam_splitter examples") {
    const auto vac = beam_splitter(TwoModeAmplitudes::fock(0, 0, 4));
    CHECK(vac(0, 0) == complex(1.0));

    const auto hom = beam_splitter(TwoModeAmplitudes::fock(1, 1, 4));
    CHECK(std::abs(hom(1, 1)) < 1e-15);
    CHECK(hom(2, 0).real() == doctest::Approx(M_SQRT1_2).epsilon(1e-14));
    CHECK(hom(0, 2).real() == doctest::Approx(-M_SQRT1_2).epsilon(1e-14));

    const auto split = joint_pnd(beam_splitter(TwoModeAmplitudes::fock(1, 0, 4)));
    CHECK(split(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(split(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("beam_splitter matches the permanent formula for general transmissivity") {
    auto rng = rng_for(11);
    for (double t : {0.5, 0.0, 1.0, 0.2, 0.83}) {
        const auto in = random_two_mode(rng, 6);
        const auto got = beam_splitter(in, {t});
        CHECK(max_abs_diff(got, reference_beam_splitter(in, t)) < 1e-12);
    }
}

TEST_CASE("beam_splitter is unitary on random states") {
    auto rng = rng_for(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int cut = 4 + trial % 12;
        const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const auto in = random_two_mode(rng, cut, cut);
        const auto out = beam_splitter(in, {t});
        CHECK(std::abs(out.norm_squared() - in.norm_squared()) < 1e-10);
        CHECK(std::abs(mean_photon_number(out) - mean_photon_number(in)) < 1e-9);
    }
}

TEST_CASE("two balanced beam splitters compose to the identity") {
    auto rng = rng_for(13);
    for (int cut : {3, 10, 25}) {
        const auto in = random_two_mode(rng, cut, cut);
        const auto twice = beam_splitter(beam_splitter(in));
        CHECK(max_abs_diff(twice, in) < 1e-10);
    }
}

TEST_CASE("beam_splitter output cutoff") {
    const auto in = TwoModeAmplitudes::fock(3, 3, 3);
    const auto cut = beam_splitter(in);
    CHECK(cut.cutoff() == 3);
    CHECK(tail_mass(cut) > 0.1);
    const auto wide = beam_splitter(in, {}, 6);
    CHECK(wide.cutoff() == 6);
    CHECK(std::abs(tail_mass(wide)) < 1e-12);
    CHECK_THROWS_AS(beam_splitter(in, {1.5}), DomainError);
}

TEST_CASE("phase_shift") {
    auto rng = rng_for(14);
    const auto in = random_two_mode(rng, 5);
    CHECK(max_abs_diff(phase_shift(in, Mode::c, 0.0), in) == 0.0);

    const std::vector<complex> amps{0, 0, M_SQRT1_2, 0, 0, 0, -M_SQRT1_2, 0, 0};
    const TwoModeAmplitudes hom(2, amps);
    const auto pi = phase_shift(hom, Mode::d, std::numbers::pi);
    CHECK(std::abs(pi(0, 2) - hom(0, 2)) < 1e-15);
    const auto half = phase_shift(hom, Mode::d, std::numbers::pi / 2);
    CHECK(std::abs(half(0, 2) + hom(0, 2)) < 1e-15);
    CHECK(half(2, 0) == hom(2, 0));

    const auto c = phase_shift(in, Mode::c, 0.3);
    for (int m = 0; m <= 5; ++m) {
        for (int n = 0; n <= 5; ++n) {
            CHECK(std::abs(c(m, n) - std::polar(1.0, 0.3 * m) * in(m, n)) < 1e-15);
        }
    }
}

TEST_CASE("mix_cs_sv examples") {
    const auto vac = mix_cs_sv({0.0, 0.0}, {0.0, 0.0});
    CHECK(vac.state(0, 0) == complex(1.0));
    CHECK(vac.input_mean_photons == 0.0);

    const auto coh = mix_cs_sv({0.75, 0.0}, {0.0, 0.0});
    const auto p = joint_pnd(coh.state);
    CHECK(p(0, 0) == doctest::Approx(std::exp(-0.5625)).epsilon(1e-12));
    CHECK(std::abs(p(0, 0) - 0.5698) < 1e-4);
    CHECK(coh.input_mean_photons == doctest::Approx(0.5625));
    const double mu = 0.5625 / 2.0;
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            const double poisson = std::exp(-2.0 * mu) * std::pow(mu, m + n) /
                                   (testing::factorial(m) * testing::factorial(n));
            CHECK(p(m, n) == doctest::Approx(poisson).epsilon(1e-11));
        }
    }

    Truncation t;
    t.adaptive = true;
    const auto sv = mix_cs_sv({0.0, 0.0}, {0.7, 1.1}, t);
    const auto ps = joint_pnd(sv.state);
    for (int m = 0; m < ps.dim(); ++m) {
        for (int n = 0; n < ps.dim(); ++n) {
            if ((m + n) % 2 == 1) CHECK(ps(m, n) == 0.0);
        }
    }
    CHECK(sv.input_mean_photons == doctest::Approx(std::pow(std::sinh(0.7), 2)));
    CHECK(sv.tail_mass < t.tail_tol);
}

TEST_CASE("mix_cs_sv truncation policy") {
    const CoherentParams cs{1.0, 0.2};
    const SqueezeParams sv{0.6, 0.0};
    Truncation probe;
    probe.cutoff = 12;
    probe.tail_tol = 1.0;
    const double tail = mix_cs_sv(cs, sv, probe).tail_mass;
    REQUIRE(tail > 1e-9);

    reset_warning_count();
    std::string last;
    set_warning_handler([&](const std::string& m) { last = m; });
    Truncation warn_only = probe;
    warn_only.tail_tol = tail / 10.0;
    CHECK_NOTHROW(mix_cs_sv(cs, sv, warn_only));
    CHECK(warning_count() == 1);
    CHECK(last.find("tail mass") != std::string::npos);
    set_warning_handler({});

    Truncation strict = probe;
    strict.tail_tol = tail / 1000.0;
    CHECK_THROWS_AS(mix_cs_sv(cs, sv, strict), TruncationError);

    strict.adaptive = true;
    const auto grown = mix_cs_sv(cs, sv, strict);
    CHECK(grown.state.cutoff() > 12);
    CHECK(grown.tail_mass < strict.tail_tol);
}

TEST_CASE("coherent light on a cat state yields an ECS") {
    for (double b : {0.1, 0.5, 0.8, 1.0}) {
        const CoherentParams p{b, 0.7};
        const auto out = beam_splitter(tensor_product(coherent(p, 30), css(p, 30)));
        const auto target = ecs({std::sqrt(2.0) * p.value()}, 30);
        CHECK(two_mode_fidelity(out, target) >= 1.0 - 1e-9);
    }
}

TEST_CASE("ECS overlap of the mixed state equals the single-mode cat overlap") {
    Truncation t;
    t.adaptive = true;
    for (complex alpha : {complex(0.3), complex(1.0), std::polar(1.2, 0.4), std::polar(1.5, -2.0)}) {
        for (SqueezeParams sv : {optimal_squeezing(alpha), SqueezeParams{0.3, 1.0}, SqueezeParams{0.8, 0.0}}) {
            const auto cs = CoherentParams::from_complex(alpha / std::sqrt(2.0));
            const auto mixed = mix_cs_sv(cs, sv, t);
            const int cut = mixed.state.cutoff();
            const double lhs = std::norm(inner_product2(ecs({alpha}, cut), mixed.state));
            const double rhs = std::norm(inner_product(css(cs, cut), squeezed_vacuum(sv, cut)));
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("joint_pnd") {
    const auto e = joint_pnd(ecs({1.2}, 30));
    for (int m = 1; m <= 30; ++m) {
        for (int n = 1; n <= 30; ++n) CHECK(e(m, n) == 0.0);
    }
    CHECK(std::abs(e.total() - 1.0) < 1e-10);

    const auto n2 = joint_pnd(noon(2, 4));
    CHECK(n2(2, 0) == doctest::Approx(0.5));
    CHECK(n2(0, 2) == doctest::Approx(0.5));
    CHECK(n2.total() == doctest::Approx(1.0));
}

TEST_CASE("per_n_normalized") {
    std::vector<double> probs(9, 0.0);
    probs[2 * 3 + 0] = 0.02;
    probs[1 * 3 + 1] = 0.01;
    probs[0 * 3 + 2] = 0.02;
    const auto t = per_n_normalized(JointPND(2, probs));
    CHECK(*t(2, 0) == doctest::Approx(0.4));
    CHECK(*t(1, 1) == doctest::Approx(0.2));
    CHECK(*t(0, 2) == doctest::Approx(0.4));
    CHECK_FALSE(t.present(0));
    CHECK_FALSE(t.present(1));
    CHECK_FALSE(t(0, 0).has_value());
    CHECK_FALSE(t(1, 0).has_value());

    const auto e = per_n_normalized(joint_pnd(ecs({1.0}, 20)));
    for (int total = 1; total <= 12; ++total) {
        REQUIRE(e.present(total));
        CHECK(*e(total, 0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(*e(0, total) == doctest::Approx(0.5).epsilon(1e-12));
        for (int m = 1; m < total; ++m) CHECK(*e(m, total - m) == 0.0);
    }
    CHECK(*e(0, 0) == doctest::Approx(1.0));
    CHECK_FALSE(e.present(20));
    CHECK_FALSE(e.present(21));
}

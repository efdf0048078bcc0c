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

#include "ecsim/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ecsim/detection.hpp"
#include "ecsim/diagnostics.hpp"
#include "ecsim/metrics.hpp"
#include "ecsim/nonlocality.hpp"
#include "ecsim/optics.hpp"
#include "ecsim/series.hpp"
#include "ecsim/state_io.hpp"
#include "ecsim/states.hpp"

namespace ecsim::cli {
namespace {

using Metadata = std::vector<std::pair<std::string, std::string>>;

constexpr const char* kBeamSplitterConvention =
    "a^dag -> (c^dag + d^dag)/sqrt2, b^dag -> (c^dag - d^dag)/sqrt2";

std::string num(double v) { return format_number(v); }

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double parse_number_or_optimal(const std::string& text, const char* flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(fmt::format("{}: expected a number or 'optimal', got '{}'", flag, text));
    }
}

Metadata base_metadata(const SweepConfig& cfg) {
    return {
        {"tool", "ecsim"},
        {"tool_version", kToolVersion},
        {"schema_version", std::to_string(kSchemaVersion)},
        {"command", cfg.canonical_command()},
        {"subcommand", cfg.command},
        {"cutoff", std::to_string(cfg.cutoff)},
        {"adaptive_cutoff", cfg.adaptive_cutoff ? "true" : "false"},
        {"tail_tol", num(cfg.tail_tol)},
        {"seed", std::to_string(cfg.seed)},
        {"beam_splitter", kBeamSplitterConvention},
    };
}

void finish_metadata(Metadata& meta, int max_cutoff, double max_tail) {
    meta.emplace_back("cutoff_used_max", std::to_string(max_cutoff));
    meta.emplace_back("tail_mass_max", num(max_tail));
    meta.emplace_back("warnings", std::to_string(warning_count()));
    meta.emplace_back("timestamp", utc_timestamp());
}

std::string render_series(const SweepConfig& cfg, const SeriesRecord& record,
                          const std::string& title, const std::vector<std::string>& plot) {
    std::ostringstream os;
    if (cfg.format == "json") {
        write_json(os, record);
    } else if (cfg.format == "svg") {
        write_svg(os, record, title, plot);
    } else {
        write_csv(os, record);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// state

std::string run_state(const SweepConfig& cfg) {
    const auto t = cfg.truncation();
    Metadata meta = base_metadata(cfg);
    meta.emplace_back("kind", cfg.kind);

    std::optional<ModeAmplitudes> single;
    std::optional<TwoModeAmplitudes> pair;
    if (cfg.kind == "coherent") {
        single = coherent(CoherentParams{cfg.beta, cfg.phi}, t);
    } else if (cfg.kind == "squeezed") {
        const double r = parse_number_or_optimal(cfg.r, "--r");
        const double theta = parse_number_or_optimal(cfg.theta, "--theta");
        single = squeezed_vacuum(SqueezeParams{r, theta}, t);
    } else if (cfg.kind == "css") {
        single = css(CoherentParams{cfg.beta, cfg.phi}, t);
    } else if (cfg.kind == "ecs") {
        pair = ecs(EcsParams{std::polar(cfg.alpha, cfg.phi)}, t);
    } else if (cfg.kind == "noon") {
        pair = noon(cfg.photons, cfg.cutoff, cfg.noon_phase);
    } else {
        const complex alpha = std::numbers::sqrt2 * std::polar(cfg.beta, cfg.phi);
        SqueezeParams sv = optimal_squeezing(alpha);
        if (cfg.r != "optimal") sv.r = parse_number_or_optimal(cfg.r, "--r");
        if (cfg.theta != "optimal") sv.theta = parse_number_or_optimal(cfg.theta, "--theta");
        meta.emplace_back("r", num(sv.r));
        meta.emplace_back("theta", num(sv.theta));
        pair = mix_cs_sv(CoherentParams{cfg.beta, cfg.phi}, sv, t).state;
    }

    const int cutoff = single ? single->cutoff() : pair->cutoff();
    const double tail = single ? tail_mass(*single) : tail_mass(*pair);
    finish_metadata(meta, cutoff, tail);

    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : meta) doc["metadata"][k] = v;
        doc["modes"] = single ? 1 : 2;
        doc["cutoff"] = cutoff;
        auto amps = nlohmann::ordered_json::array();
        if (single) {
            for (const auto& a : single->amps()) amps.push_back({a.real(), a.imag()});
        } else {
            for (const auto& a : pair->amps()) amps.push_back({a.real(), a.imag()});
        }
        doc["amplitudes"] = std::move(amps);
        os << doc.dump(2) << '\n';
    } else if (single) {
        write_state(os, *single, meta);
    } else {
        write_state(os, *pair, meta);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// pnd

std::string run_pnd(const SweepConfig& cfg) {
    const auto t = cfg.truncation();
    Metadata meta = base_metadata(cfg);

    double beta = cfg.beta;
    if (cfg.nbar) beta = std::sqrt(0.5 * ecs_alpha_squared(*cfg.nbar));
    const complex alpha = std::numbers::sqrt2 * std::polar(beta, cfg.phi);

    TwoModeAmplitudes state(0);
    double tail = 0.0;
    if (cfg.source == "ecs") {
        state = ecs(EcsParams{alpha}, t);
        tail = tail_mass(state);
    } else {
        SqueezeParams sv = optimal_squeezing(alpha);
        if (cfg.r != "optimal") sv.r = parse_number_or_optimal(cfg.r, "--r");
        if (cfg.theta != "optimal") sv.theta = parse_number_or_optimal(cfg.theta, "--theta");
        meta.emplace_back("r", num(sv.r));
        meta.emplace_back("theta", num(sv.theta));
        auto mixed = mix_cs_sv(CoherentParams{beta, cfg.phi}, sv, t);
        tail = mixed.tail_mass;
        state = std::move(mixed.state);
        meta.emplace_back("input_mean_photons", num(mixed.input_mean_photons));
    }
    meta.emplace_back("source", cfg.source);
    meta.emplace_back("beta", num(beta));
    meta.emplace_back("ecs_mean_photons", num(ecs_mean_photons(alpha)));
    meta.emplace_back("table", cfg.table);
    finish_metadata(meta, state.cutoff(), tail);

    const auto joint = joint_pnd(state);
    const auto normalized_table = per_n_normalized(joint);

    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : meta) doc["metadata"][k] = v;
        if (cfg.table != "normalized") {
            auto rows = nlohmann::ordered_json::array();
            for (int m = 0; m <= joint.cutoff(); ++m) {
                for (int n = 0; n <= joint.cutoff(); ++n) {
                    if (joint(m, n) > 0.0) rows.push_back({m, n, joint(m, n)});
                }
            }
            doc["joint"] = std::move(rows);
        }
        if (cfg.table != "joint") {
            auto rows = nlohmann::ordered_json::array();
            for (int m = 0; m <= joint.cutoff(); ++m) {
                for (int n = 0; n <= joint.cutoff(); ++n) {
                    const auto v = normalized_table(m, n);
                    if (v && *v > 0.0) rows.push_back({m, n, *v});
                }
            }
            doc["per_n_normalized"] = std::move(rows);
        }
        os << doc.dump(2) << '\n';
        return os.str();
    }

    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    if (cfg.table != "normalized") {
        os << "# table: joint\nm,n,p\n";
        for (int m = 0; m <= joint.cutoff(); ++m) {
            for (int n = 0; n <= joint.cutoff(); ++n) {
                if (joint(m, n) > 0.0) os << m << ',' << n << ',' << num(joint(m, n)) << '\n';
            }
        }
    }
    if (cfg.table == "both") os << '\n';
    if (cfg.table != "joint") {
        os << "# table: per_n_normalized\nm,n,p\n";
        for (int m = 0; m <= joint.cutoff(); ++m) {
            for (int n = 0; n <= joint.cutoff(); ++n) {
                const auto v = normalized_table(m, n);
                if (v && *v > 0.0) os << m << ',' << n << ',' << num(*v) << '\n';
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// fidelity-curve

std::string run_fidelity_curve(const SweepConfig& cfg) {
    const auto grid = sweep_grid(cfg.nbar_min, cfg.nbar_max, cfg.step);
    Column n_bar{"n_bar", {}}, f_opt{"F_opt", {}}, f_vac{"F_vacuum", {}};
    for (double x : grid) {
        const complex alpha = std::polar(std::sqrt(ecs_alpha_squared(x)), cfg.phi);
        n_bar.values.push_back(x);
        f_opt.values.push_back(fidelity_closed_form(alpha, optimal_squeezing(alpha)));
        f_vac.values.push_back(vacuum_baseline_fidelity(alpha, cfg.cutoff));
    }
    SeriesRecord record{{n_bar, f_opt, f_vac}, base_metadata(cfg)};
    record.metadata.emplace_back("phi", num(cfg.phi));
    record.metadata.emplace_back("F_opt", "closed form at r = asinh(|alpha|^2)/2, theta = 2 phi + pi");
    record.metadata.emplace_back("F_vacuum", "|<CSS(alpha/sqrt2)|0>|^2");
    finish_metadata(record.metadata, cfg.cutoff, 0.0);
    return render_series(cfg, record, "ECS fidelity vs mean photon number", {"F_opt", "F_vacuum"});
}

// ---------------------------------------------------------------------------
// j3-curve

std::string run_j3_curve(const SweepConfig& cfg, std::ostream& err) {
    const auto grid = sweep_grid(cfg.nbar_min, cfg.nbar_max, cfg.step);
    const auto source = (cfg.source == "ecs") ? J3Source::ecs : J3Source::mixed;
    OptimizerSettings settings;
    settings.restarts = cfg.restarts;
    settings.seed = cfg.seed;
    settings.tol = cfg.tol;
    settings.threads = cfg.threads;

    Column n_bar{"n_bar", {}}, lo{"j3_min", {}}, hi{"j3_max", {}}, conv{"converged", {}, true};
    int max_cutoff = 0;
    for (double x : grid) {
        n_bar.values.push_back(x);
        try {
            const auto state = j3_scan_state(x, source, cfg.truncation());
            const auto ext = j3_extremize_both(state, settings);
            lo.values.push_back(ext.min.value);
            hi.values.push_back(ext.max.value);
            conv.values.push_back(ext.min.converged && ext.max.converged ? 1.0 : 0.0);
            max_cutoff = std::max(max_cutoff, state.cutoff());
        } catch (const TruncationError& e) {
            warn(fmt::format("n_bar {}: {}", num(x), e.what()));
            lo.values.push_back(std::nan(""));
            hi.values.push_back(std::nan(""));
            conv.values.push_back(0.0);
        }
        err << fmt::format("j3-curve: n_bar {} done\n", num(x));
    }
    SeriesRecord record{{n_bar, lo, hi, conv}, base_metadata(cfg)};
    record.metadata.emplace_back("source", cfg.source);
    record.metadata.emplace_back("restarts", std::to_string(cfg.restarts));
    record.metadata.emplace_back("tol", num(cfg.tol));
    record.metadata.emplace_back("phase_shift", "pi/2 on mode d");
    record.metadata.emplace_back(
        "j3", "Q(a)-Q(a,b)-Q(a,g)-Q(a,d)+Q(b,g)+Q(b,d)+Q(g,d); single term in mode c");
    record.metadata.emplace_back("published_direction", "minimize (j3_min)");
    finish_metadata(record.metadata, max_cutoff, 0.0);
    return render_series(cfg, record, "Extremal J3 vs ECS mean photon number", {"j3_min", "j3_max"});
}

// ---------------------------------------------------------------------------
// similarity-sweep

std::string run_similarity_sweep(const SweepConfig& cfg) {
    SweepSpec spec;
    spec.x_min = cfg.x_min;
    spec.x_max = cfg.x_max;
    spec.step = cfg.step;
    spec.beta_start = cfg.beta_start;
    spec.beta_end = cfg.beta_end;
    spec.fixed_nbar = cfg.fixed_nbar;
    spec.phase = cfg.phi;
    spec.detector.detectors = cfg.detectors;
    spec.detector.eta_c = cfg.eta;
    spec.detector.eta_d = cfg.eta_d.value_or(cfg.eta);
    spec.truncation = cfg.truncation();
    const auto points = similarity_sweep(spec, cfg.threads);

    Column x{"x", {}}, sim{"similarity", {}}, nb{"n_bar", {}}, beta{"beta", {}}, r{"r", {}};
    int max_cutoff = 0;
    double max_tail = 0.0;
    for (const auto& p : points) {
        x.values.push_back(p.x);
        sim.values.push_back(p.similarity);
        nb.values.push_back(p.n_bar);
        beta.values.push_back(p.beta);
        r.values.push_back(p.r);
        max_cutoff = std::max(max_cutoff, p.cutoff);
        max_tail = std::max(max_tail, p.tail_mass);
    }
    SeriesRecord record{{x, sim, nb, beta, r}, base_metadata(cfg)};
    record.metadata.emplace_back("x", "sinh(2r)/|alpha|^2 with |alpha|^2 = 2 beta^2");
    record.metadata.emplace_back(
        "beta_schedule",
        cfg.fixed_nbar ? fmt::format("fixed: ECS mean photon number {}", num(*cfg.fixed_nbar))
                       : fmt::format("linear (assumed): {} at x=0 to {} at x=2", num(cfg.beta_start),
                                     num(cfg.beta_end)));
    record.metadata.emplace_back("n_bar", "mean photons of the mixed input, beta^2 + sinh^2 r");
    record.metadata.emplace_back("eta_c", num(spec.detector.eta_c));
    record.metadata.emplace_back("eta_d", num(spec.detector.eta_d));
    record.metadata.emplace_back("detectors", std::to_string(cfg.detectors));
    finish_metadata(record.metadata, max_cutoff, max_tail);
    return render_series(cfg, record, "Similarity to detected ECS vs squeezed-vacuum fraction",
                         {"similarity"});
}

// ---------------------------------------------------------------------------
// click-sim

std::string run_click_sim(const SweepConfig& cfg) {
    DetectorConfig det;
    det.detectors = cfg.detectors;
    det.eta_c = det.eta_d = 1.0;
    const auto weights = det.weights(Mode::c);
    const auto samples = static_cast<std::size_t>(cfg.samples);

    const auto model_c = click_distribution_mode(cfg.m, det, Mode::c);
    const auto model_d = click_distribution_mode(cfg.n, det, Mode::d);
    const auto mc_c = sample_click_distribution(cfg.m, weights, samples, splitmix64(cfg.seed));
    const auto mc_d = sample_click_distribution(cfg.n, weights, samples, splitmix64(cfg.seed + 1));

    Column k{"k", {}, true};
    for (int i = 0; i <= cfg.detectors; ++i) k.values.push_back(i);
    SeriesRecord record{{k,
                         {"model_c", model_c},
                         {"monte_carlo_c", mc_c},
                         {"model_d", model_d},
                         {"monte_carlo_d", mc_d}},
                        base_metadata(cfg)};
    record.metadata.emplace_back("photons_c", std::to_string(cfg.m));
    record.metadata.emplace_back("photons_d", std::to_string(cfg.n));
    record.metadata.emplace_back("detectors", std::to_string(cfg.detectors));
    record.metadata.emplace_back("samples", std::to_string(cfg.samples));
    record.metadata.emplace_back("total_variation_c", num(total_variation(model_c, mc_c)));
    record.metadata.emplace_back("total_variation_d", num(total_variation(model_d, mc_d)));
    finish_metadata(record.metadata, 0, 0.0);
    return render_series(cfg, record, "Click distribution: model vs Monte Carlo",
                         {"model_c", "monte_carlo_c"});
}

std::string fmt_opt(const std::optional<double>& v) { return v ? num(*v) : std::string{}; }

}  // namespace

std::string SweepConfig::canonical_command() const {
    std::string s = "ecsim " + command;
    auto add = [&](const std::string& flag, const std::string& value) {
        s += " " + flag + " " + value;
    };
    if (command == "state") {
        add("--kind", kind);
        add("--beta", num(beta));
        add("--phi", num(phi));
        add("--r", r);
        add("--theta", theta);
        add("--alpha", num(alpha));
        add("--photons", std::to_string(photons));
        add("--noon-phase", num(noon_phase));
    } else if (command == "pnd") {
        add("--source", source);
        if (nbar) {
            add("--nbar", fmt_opt(nbar));
        } else {
            add("--beta", num(beta));
        }
        add("--phi", num(phi));
        add("--r", r);
        add("--theta", theta);
        add("--table", table);
    } else if (command == "fidelity-curve") {
        add("--nbar-min", num(nbar_min));
        add("--nbar-max", num(nbar_max));
        add("--step", num(step));
        add("--phi", num(phi));
    } else if (command == "j3-curve") {
        add("--source", source);
        add("--nbar-min", num(nbar_min));
        add("--nbar-max", num(nbar_max));
        add("--step", num(step));
        add("--restarts", std::to_string(restarts));
        add("--tol", num(tol));
    } else if (command == "similarity-sweep") {
        add("--eta", num(eta));
        if (eta_d) add("--eta-d", fmt_opt(eta_d));
        add("--detectors", std::to_string(detectors));
        add("--x-min", num(x_min));
        add("--x-max", num(x_max));
        add("--step", num(step));
        add("--beta-start", num(beta_start));
        add("--beta-end", num(beta_end));
        if (fixed_nbar) add("--fixed-nbar", fmt_opt(fixed_nbar));
        add("--phi", num(phi));
    } else if (command == "click-sim") {
        add("--m", std::to_string(m));
        add("--n", std::to_string(n));
        add("--detectors", std::to_string(detectors));
        add("--samples", std::to_string(samples));
    }
    add("--cutoff", std::to_string(cutoff));
    s += adaptive_cutoff ? " --adaptive-cutoff" : " --no-adaptive-cutoff";
    add("--tail-tol", num(tail_tol));
    add("--seed", std::to_string(seed));
    add("--format", format);
    return s;
}

SweepConfig parse_args(const std::vector<std::string>& argv) {
    SweepConfig cfg;
    CLI::App app{"Entangled coherent states from coherent and squeezed-vacuum light", "ecsim"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out;
    app.add_option("--cutoff", cfg.cutoff, "Photon-number cutoff per mode (starting value when adaptive)")
        ->check(CLI::Range(0, 480));
    app.add_flag("--adaptive-cutoff,!--no-adaptive-cutoff", cfg.adaptive_cutoff,
                 "Double the cutoff until the tail mass is below --tail-tol (default on)");
    app.add_option("--tail-tol", cfg.tail_tol, "Truncation tolerance")->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out, "Output file (default: stdout)");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    auto* seed_opt = app.add_option("--seed", cfg.seed, "Seed for stochastic components");
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

    auto* state = app.add_subcommand("state", "Dump a constructed state in the plain-text format");
    state->add_option("--kind", cfg.kind)
        ->check(CLI::IsMember({"coherent", "squeezed", "css", "ecs", "noon", "mixed"}));
    state->add_option("--beta", cfg.beta, "Coherent amplitude |beta|")->check(CLI::NonNegativeNumber);
    state->add_option("--phi", cfg.phi, "Coherent phase");
    state->add_option("--r", cfg.r, "Squeezing r, or 'optimal' (mixed only)");
    state->add_option("--theta", cfg.theta, "Squeezing phase, or 'optimal' (mixed only)");
    state->add_option("--alpha", cfg.alpha, "ECS amplitude |alpha|")->check(CLI::NonNegativeNumber);
    state->add_option("--photons", cfg.photons, "NOON photon number")->check(CLI::PositiveNumber);
    state->add_option("--noon-phase", cfg.noon_phase, "NOON relative phase");

    auto* pnd = app.add_subcommand("pnd", "Joint photon-number distribution and per-N normalization");
    pnd->add_option("--source", cfg.source)->check(CLI::IsMember({"mixed", "ecs"}));
    pnd->add_option("--beta", cfg.beta, "Coherent amplitude |beta|")->check(CLI::NonNegativeNumber);
    pnd->add_option("--nbar", cfg.nbar, "ECS mean photon number; sets beta and overrides --beta")
        ->check(CLI::NonNegativeNumber);
    pnd->add_option("--phi", cfg.phi, "Coherent phase");
    pnd->add_option("--r", cfg.r, "Squeezing r or 'optimal'");
    pnd->add_option("--theta", cfg.theta, "Squeezing phase or 'optimal'");
    pnd->add_option("--table", cfg.table)->check(CLI::IsMember({"joint", "normalized", "both"}));

    std::optional<double> step, nbar_max;
    auto* fid = app.add_subcommand("fidelity-curve", "Optimal-squeezing and vacuum-baseline fidelity");
    fid->add_option("--nbar-min", cfg.nbar_min)->check(CLI::NonNegativeNumber);
    fid->add_option("--nbar-max", nbar_max)->check(CLI::NonNegativeNumber);
    fid->add_option("--step", step)->check(CLI::PositiveNumber);
    fid->add_option("--phi", cfg.phi, "Coherent phase");

    auto* j3c = app.add_subcommand("j3-curve", "Extremal J3 versus mean photon number");
    j3c->add_option("--source", cfg.source)->check(CLI::IsMember({"ecs", "mixed"}));
    j3c->add_option("--nbar-min", cfg.nbar_min)->check(CLI::NonNegativeNumber);
    j3c->add_option("--nbar-max", nbar_max)->check(CLI::NonNegativeNumber);
    j3c->add_option("--step", step)->check(CLI::PositiveNumber);
    j3c->add_option("--restarts", cfg.restarts)->check(CLI::PositiveNumber);
    j3c->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("similarity-sweep", "Detected similarity to ECS vs SV fraction");
    sim->add_option("--eta", cfg.eta, "Transmission per mode")->check(CLI::Range(0.0, 1.0));
    sim->add_option("--eta-d", cfg.eta_d, "Transmission of mode d (default --eta)")
        ->check(CLI::Range(0.0, 1.0));
    sim->add_option("--detectors", cfg.detectors)->check(CLI::Range(1, 64));
    sim->add_option("--x-min", cfg.x_min)->check(CLI::NonNegativeNumber);
    sim->add_option("--x-max", cfg.x_max)->check(CLI::NonNegativeNumber);
    sim->add_option("--step", step)->check(CLI::PositiveNumber);
    sim->add_option("--beta-start", cfg.beta_start)->check(CLI::NonNegativeNumber);
    sim->add_option("--beta-end", cfg.beta_end)->check(CLI::NonNegativeNumber);
    sim->add_option("--fixed-nbar", cfg.fixed_nbar, "Hold the ECS mean photon number fixed")
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--phi", cfg.phi, "Coherent phase");

    auto* click = app.add_subcommand("click-sim", "Click model vs Monte-Carlo sampling");
    click->add_option("--m", cfg.m, "Photons in mode c")->check(CLI::Range(0, 1000));
    click->add_option("--n", cfg.n, "Photons in mode d")->check(CLI::Range(0, 1000));
    click->add_option("--detectors", cfg.detectors)->check(CLI::Range(1, 64));
    click->add_option("--samples", cfg.samples)->check(CLI::Range(1L, 1000000000L));

    std::vector<const char*> raw;
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os, es;
        app.exit(e, os, es);
        cfg.help = os.str();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (out_opt->count() > 0) cfg.out = out;
    cfg.seed_given = seed_opt->count() > 0;

    if (cfg.command == "fidelity-curve") {
        cfg.nbar_max = nbar_max.value_or(3.0);
        cfg.step = step.value_or(0.02);
    } else if (cfg.command == "j3-curve") {
        cfg.nbar_max = nbar_max.value_or(2.0);
        cfg.step = step.value_or(0.05);
    } else if (cfg.command == "similarity-sweep") {
        cfg.step = step.value_or(0.05);
    }
    if ((cfg.command == "fidelity-curve" || cfg.command == "j3-curve") && cfg.nbar_max < cfg.nbar_min) {
        throw UsageError("--nbar-max: must not be below --nbar-min");
    }
    if (cfg.command == "similarity-sweep" && cfg.x_max < cfg.x_min) {
        throw UsageError("--x-max: must not be below --x-min");
    }

    if (cfg.format.empty()) cfg.format = (cfg.command == "click-sim") ? "json" : "csv";
    if (cfg.format == "svg" && (cfg.command == "state" || cfg.command == "pnd")) {
        throw UsageError("--format: svg is not available for " + cfg.command);
    }
    if (cfg.r != "optimal") parse_number_or_optimal(cfg.r, "--r");
    if (cfg.theta != "optimal") parse_number_or_optimal(cfg.theta, "--theta");
    if (cfg.command == "state" && cfg.kind == "squeezed" && (cfg.r == "optimal" || cfg.theta == "optimal")) {
        throw UsageError("--r: squeezed state needs numeric --r and --theta");
    }
    if (cfg.command == "state" && cfg.kind == "noon" && cfg.photons > cfg.cutoff) {
        throw UsageError("--photons: exceeds --cutoff");
    }
    return cfg;
}

int run(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.help.empty()) {
        out << cfg.help;
        return kOk;
    }
    reset_warning_count();
    set_warning_handler([&err](const std::string& m) { err << "warning: " << m << '\n'; });
    struct RestoreHandler {
        ~RestoreHandler() { set_warning_handler({}); }
    } restore;

    std::string text;
    try {
        if (cfg.command == "state") {
            text = run_state(cfg);
        } else if (cfg.command == "pnd") {
            text = run_pnd(cfg);
        } else if (cfg.command == "fidelity-curve") {
            text = run_fidelity_curve(cfg);
        } else if (cfg.command == "j3-curve") {
            text = run_j3_curve(cfg, err);
        } else if (cfg.command == "similarity-sweep") {
            text = run_similarity_sweep(cfg);
        } else if (cfg.command == "click-sim") {
            text = run_click_sim(cfg);
        } else {
            err << "error: unknown subcommand '" << cfg.command << "'\n";
            return kUsage;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (cfg.out) {
        std::ofstream file(*cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << *cfg.out << "' for writing\n";
            return kIo;
        }
        file << text;
        file.flush();
        if (!file) {
            err << "error: failed writing '" << *cfg.out << "'\n";
            return kIo;
        }
    } else {
        out << text;
    }
    if (warning_count() > 0) err << warning_count() << " warning(s)\n";
    return kOk;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    SweepConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    }
    return run(cfg, std::cout, std::cerr);
}

}  // namespace ecsim::cli

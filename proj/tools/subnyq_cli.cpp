// SPDX-License-Identifier: Apache-2.0
//
// subnyq - sub-Nyquist collocated MIMO radar simulation and recovery
// Copyright (C) 2026 The subnyq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <subnyq/subnyq.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace subnyq;

namespace {

struct Common {
    std::string config;
    std::string mode;
    std::string profile;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ToolkitConfig load(const Common& c)
{
    json root = c.config.empty() ? json::object() : json::parse(read_file(c.config), nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw Error(ErrorCategory::config, "configuration is not a JSON object: " + c.config);
    if (!c.profile.empty())
        root["profile"] = c.profile;
    if (!c.mode.empty())
        root["array"]["mode"] = c.mode;
    return parse_config(root.dump());
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text))
        throw Error(ErrorCategory::io, "cannot write " + path);
}

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("-c,--config", c.config, "JSON configuration file");
    cmd->add_option("--mode", c.mode, "array mode override (mode1..mode4)");
    cmd->add_option("--profile", c.profile, "profile override (desk, full)");
}

int max_targets_of(const ToolkitConfig& cfg, std::optional<int> cli)
{
    if (cli)
        return *cli;
    return cfg.recovery.max_targets > 0 ? cfg.recovery.max_targets : 10;
}

}  // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Sub-Nyquist cognitive MIMO radar toolkit"};
    app.require_subcommand(1);
    Common common;

    // simulate
    auto* sim = app.add_subcommand("simulate", "synthesise receiver I/Q for a scene");
    add_common(sim, common);
    std::string sim_scene, sim_out, sim_scene_out;
    std::optional<double> sim_snr;
    std::uint64_t sim_seed = 1;
    sim->add_option("-s,--scene", sim_scene, "scene file; generated from the experiment section if omitted");
    sim->add_option("-o,--out", sim_out, "output stem (<stem>.iq, <stem>.hdr)")->required();
    sim->add_option("--snr-db", sim_snr, "add complex white Gaussian noise at this SNR");
    sim->add_option("--seed", sim_seed, "seed for the generated scene and the noise");
    sim->add_option("--write-scene", sim_scene_out, "also write the scene used");

    // acquire
    auto* acq = app.add_subcommand("acquire", "sub-Nyquist acquisition: I/Q -> Fourier coefficients");
    add_common(acq, common);
    std::string acq_in, acq_out, acq_csv;
    acq->add_option("-i,--in", acq_in, "input I/Q stem")->required();
    acq->add_option("-o,--out", acq_out, "coefficient blob")->required();
    acq->add_option("--csv", acq_csv, "also write the coefficients as CSV");

    // recover
    auto* rec = app.add_subcommand("recover", "matrix OMP: coefficients -> estimate table");
    add_common(rec, common);
    std::string rec_in, rec_out;
    std::optional<int> rec_max;
    std::optional<double> rec_tol;
    rec->add_option("-i,--in", rec_in, "coefficient blob")->required();
    rec->add_option("-o,--out", rec_out, "estimate CSV")->required();
    rec->add_option("--max-targets", rec_max, "iteration cap")->check(CLI::PositiveNumber);
    rec->add_option("--tol", rec_tol, "relative residual stopping tolerance");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Monte-Carlo detection experiment");
    add_common(exp, common);
    std::string exp_json, exp_csv;
    std::optional<int> exp_trials;
    std::optional<std::uint64_t> exp_seed;
    std::optional<double> exp_snr;
    exp->add_option("--json", exp_json, "metrics JSON output (stdout if omitted)");
    exp->add_option("--csv", exp_csv, "metrics CSV output");
    exp->add_option("--trials", exp_trials, "number of trials")->check(CLI::PositiveNumber);
    exp->add_option("--seed", exp_seed, "experiment seed");
    exp->add_option("--snr-db", exp_snr, "SNR in dB (noiseless if omitted and not configured)");

    // reduction
    auto* red = app.add_subcommand("reduction", "sampling and hardware reduction summary");
    add_common(red, common);
    bool red_json = false;
    red->add_flag("--json", red_json, "print JSON instead of a table");

    // ppi
    auto* ppi = app.add_subcommand("ppi", "score estimates against a scene and draw the PPI");
    add_common(ppi, common);
    std::string ppi_scene, ppi_est, ppi_out;
    ppi->add_option("-s,--scene", ppi_scene, "ground-truth scene file")->required();
    ppi->add_option("-e,--estimate", ppi_est, "estimate CSV")->required();
    ppi->add_option("-o,--out", ppi_out, "output stem (<stem>.svg, <stem>.csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorCategory::config, e.what());
    }

    const ToolkitConfig cfg = load(common);

    if (*sim) {
        const RadarSetup setup = make_setup(cfg);
        Scene scene = sim_scene.empty() ? generate_scene(cfg.experiment.scene_spec, setup.range_grid, sim_seed)
                                        : read_scene(sim_scene, setup.plan.base.pri);
        validate(scene, setup.plan.base.pri);
        ReceivedBaseband rx = synth_received(scene, setup.array, setup.plan, setup.pulses);
        const std::optional<double> snr = sim_snr ? sim_snr : cfg.experiment.snr_db;
        if (snr)
            rx = add_noise(rx, *snr, sim_seed);
        write_iq(sim_out, rx, plan_hash(setup.plan));
        if (!sim_scene_out.empty())
            write_scene(sim_scene_out, scene);
        std::cout << json{{"iq", sim_out + ".iq"}, {"targets", scene.size()}, {"receivers", rx.receivers.size()},
                          {"sample_rate_hz", rx.sample_rate}}
                         .dump()
                  << "\n";
    } else if (*acq) {
        const RadarSetup setup = make_setup(cfg);
        std::uint64_t hash = 0;
        const ReceivedBaseband rx = read_iq(acq_in, &hash);
        if (hash != plan_hash(setup.plan))
            throw Error(ErrorCategory::config, "I/Q file was recorded with a different transmit plan");
        const CoefficientSet y = acquire(rx, setup.plan, setup.adc, setup.kappa, &setup.pulses);
        write_coefficients(acq_out, y);
        if (!acq_csv.empty())
            write_coefficients_csv(acq_csv, y);
        std::cout << json{{"coefficients", acq_out}, {"K", y.kappa.size()}, {"tx", y.num_tx()}, {"rx", y.num_rx()}}.dump()
                  << "\n";
    } else if (*rec) {
        const RadarSetup setup = make_setup(cfg);
        const CoefficientSet y = read_coefficients(rec_in);
        const DictionarySet dict = build_dictionaries(setup.array, setup.plan, y.kappa, setup.range_grid,
                                                      setup.azimuth_grid, y.tx_indices, y.rx_indices);
        const SparseEstimate est =
            matrix_omp(y, dict, max_targets_of(cfg, rec_max), rec_tol.value_or(cfg.recovery.residual_tol));
        write_estimate_csv(rec_out, est, setup.range_grid, setup.azimuth_grid);
        std::cout << json{{"estimate", rec_out}, {"targets", est.support.size()},
                          {"relative_residual", est.relative_residual}}
                         .dump()
                  << "\n";
    } else if (*exp) {
        ExperimentConfig e = cfg.experiment;
        if (exp_trials)
            e.trials = *exp_trials;
        if (exp_seed)
            e.seed = *exp_seed;
        if (exp_snr)
            e.snr_db = *exp_snr;
        const std::vector<MetricsRecord> records = run_comparison(e, cfg.modes);
        write_text(exp_json, metrics_json(records) + "\n");
        if (!exp_csv.empty())
            write_text(exp_csv, metrics_csv(records));
    } else if (*red) {
        const RadarSetup setup = make_setup(cfg);
        const ReductionSummary r = sampling_reduction(cfg.array.mode, setup.plan, setup.adc);
        const json j{{"mode", to_string(cfg.array.mode)},
                     {"spectral_rate_factor", r.spectral_rate_factor},
                     {"bandwidth_factor_with_guards", r.bandwidth_factor_with_guards},
                     {"bandwidth_factor_no_guards", r.bandwidth_factor_no_guards},
                     {"spatial_factor", r.spatial_factor},
                     {"combined_sampling_reduction_pct", r.combined_sampling_reduction_pct},
                     {"hardware_channel_reduction_pct", r.hardware_channel_reduction_pct},
                     {"combined_bandwidth_factor", r.combined_bandwidth_factor}};
        if (red_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& [key, value] : j.items())
                std::printf("%-34s %s\n", key.c_str(), value.is_string() ? value.get<std::string>().c_str()
                                                                         : value.dump().c_str());
        }
    } else if (*ppi) {
        const RadarSetup setup = make_setup(cfg);
        const Scene truth = read_scene(ppi_scene, setup.plan.base.pri);
        const SparseEstimate est = read_estimate_csv(ppi_est);
        const DetectionReport report = match_targets(truth, est, setup.range_grid, setup.azimuth_grid);
        const auto [svg, csv] = emit_ppi(report, truth, est, setup.range_grid, setup.azimuth_grid, ppi_out);
        std::cout << json{{"svg", svg.string()},
                          {"csv", csv.string()},
                          {"hits", report.hits.size()},
                          {"strict_hits", report.strict_hits},
                          {"false_alarms", report.false_alarms.size()},
                          {"misses", report.misses.size()}}
                         .dump()
                  << "\n";
    }
    return 0;
}

int main(int argc, char** argv)
{
    const auto fail = [](std::string_view category, int code, const std::string& message) {
        std::cerr << json{{"error", category}, {"code", code}, {"message", message}}.dump() << "\n";
        return code;
    };
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        return fail(to_string(e.category()), e.exit_code(), e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(to_string(ErrorCategory::io), static_cast<int>(ErrorCategory::io), e.what());
    } catch (const std::exception& e) {
        return fail("internal", 70, e.what());
    }
}

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

#include "subnyq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>

#include "subnyq/error.hpp"

namespace subnyq {
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, int trial, std::uint64_t stream)
{
    return splitmix64(splitmix64(seed ^ (stream * 0xd1b54a32d192ed03ULL)) + static_cast<std::uint64_t>(trial));
}

int circular_distance(int a, int b, int period)
{
    const int d = std::abs(a - b) % period;
    return std::min(d, period - d);
}

double circular_sine_distance(double a, double b)
{
    const double d = std::fmod(std::abs(a - b), 2.0);
    return std::min(d, 2.0 - d);
}

struct TrialOutput {
    TrialResult result;
    StageCoverage stages;
};

TrialOutput run_trial(const RadarSetup& setup, const Scene& scene, const ExperimentConfig& cfg,
                      std::uint64_t noise_seed)
{
    TrialOutput out;
    ReceivedBaseband rx = synth_received(scene, setup.array, setup.plan, setup.pulses);
    ++out.stages.synthesize;
    if (cfg.snr_db) {
        rx = add_noise(rx, *cfg.snr_db, noise_seed);
        ++out.stages.noise;
    }
    StageCounters counters;
    const CoefficientSet y = acquire(rx, setup.plan, setup.adc, setup.kappa, &setup.pulses, &counters);
    out.stages.channelize += counters.channelize;
    out.stages.subsample += counters.subsample;
    out.stages.extract += counters.extract;

    const int cap = cfg.max_targets > 0 ? cfg.max_targets : std::max<int>(1, static_cast<int>(scene.size()));
    const SparseEstimate est = matrix_omp(y, setup.dictionaries, cap, cfg.residual_tol);
    ++out.stages.recover;
    out.result.report = match_targets(scene, est, setup.range_grid, setup.azimuth_grid);
    ++out.stages.match;

    out.result.num_truth = static_cast<int>(scene.size());
    out.result.num_estimates = static_cast<int>(est.support.size());
    out.result.relative_residual = est.relative_residual;
    return out;
}

void aggregate(MetricsRecord& rec)
{
    long truths = 0, hits = 0, strict = 0, estimates = 0, false_alarms = 0, all_detected = 0, perfect = 0;
    for (const TrialResult& t : rec.trials) {
        truths += t.num_truth;
        estimates += t.num_estimates;
        hits += static_cast<long>(t.report.hits.size());
        strict += t.report.strict_hits;
        false_alarms += static_cast<long>(t.report.false_alarms.size());
        if (t.report.misses.empty()) {
            ++all_detected;
            if (t.report.false_alarms.empty())
                ++perfect;
        }
    }
    const auto ratio = [](long a, long b) { return b > 0 ? static_cast<double>(a) / static_cast<double>(b) : 0.0; };
    rec.detection_rate = ratio(hits, truths);
    rec.strict_rate = ratio(strict, truths);
    rec.false_alarm_rate = ratio(false_alarms, estimates);
    const long n = static_cast<long>(rec.trials.size());
    rec.all_detected_fraction = ratio(all_detected, n);
    rec.perfect_fraction = ratio(perfect, n);
}

void add_stages(StageCoverage& into, const StageCoverage& s)
{
    into.synthesize += s.synthesize;
    into.noise += s.noise;
    into.channelize += s.channelize;
    into.subsample += s.subsample;
    into.extract += s.extract;
    into.recover += s.recover;
    into.match += s.match;
}

// Runs body(trial) for trial in [0, count) on a small worker pool.
template <class Body>
void parallel_trials(int count, int threads, Body&& body)
{
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, std::max(1, count));
    if (workers == 1) {
        for (int t = 0; t < count; ++t)
            body(t);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int t = next++; t < count; t = next++) {
                try {
                    body(t);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(Profile profile) noexcept
{
    return profile == Profile::Full ? "full" : "desk";
}

Profile parse_profile(std::string_view text)
{
    if (text == "full") return Profile::Full;
    if (text == "desk") return Profile::Desk;
    throw Error(ErrorCategory::config, "unknown profile '" + std::string(text) + "'");
}

ProfileParams profile_params(Profile profile)
{
    ProfileParams p;
    if (profile == Profile::Desk)
        p.range_cell_m = 50.0;
    return p;
}

RadarSetup make_setup(const ArrayConfig& array, const ProfileParams& params, const std::vector<Subband>& subbands)
{
    validate(array);
    RadarSetup s;
    s.array = array;
    const FdmPlan base = build_fdm_plan(array.num_tx, params.channel_spacing, params.signal_band, params.guard,
                                        params.pri, params.pulse_width);
    s.plan = build_cognitive_plan(base, subbands, params.total_power, params.phase_seed);
    s.adc = {params.adc_rate, params.channel_spacing};
    s.kappa = subband_to_kappa(s.plan);
    s.range_grid = range_grid_for_cell(params.pri, params.range_cell_m);
    s.azimuth_grid = azimuth_grid(array);
    s.sample_rate = nominal_sample_rate(base);
    s.pulses = make_pulse_bank(s.plan, s.sample_rate);
    s.dictionaries = build_dictionaries(array, s.plan, s.kappa, s.range_grid, s.azimuth_grid);
    return s;
}

RadarSetup make_setup(ArrayMode mode, Profile profile, std::uint64_t array_seed)
{
    return make_setup(build_mode(mode, array_seed), profile_params(profile));
}

Scene generate_scene(const SceneSpec& spec, const RangeGrid& rgrid, std::uint64_t seed)
{
    if (!(spec.placement_step > 0.0))
        throw Error(ErrorCategory::config, "placement step must be positive");
    std::mt19937_64 rng(seed);
    const int range_cells = static_cast<int>(rgrid.size());
    const int az_cells = static_cast<int>(std::lround(2.0 / spec.placement_step));
    std::uniform_int_distribution<int> pick_range(0, range_cells - 1);
    std::uniform_int_distribution<int> pick_az(0, az_cells - 1);
    std::uniform_real_distribution<double> pick_phase(0.0, 2.0 * kPi);
    const auto sine_at = [&](int p) { return -1.0 + 2.0 * p / az_cells; };

    Scene scene;
    std::vector<std::pair<int, int>> cells;
    if (spec.kind == SceneKind::ClosePair) {
        const int offset = static_cast<int>(std::lround(spec.pair_spacing / spec.placement_step));
        if (offset < 1 || offset >= az_cells)
            throw Error(ErrorCategory::config, "pair spacing must be a positive multiple of the placement step");
        if (spec.num_targets < 2)
            throw Error(ErrorCategory::config, "a close-pair scene needs at least two targets");
        const int n = pick_range(rng);
        std::uniform_int_distribution<int> pick_first(0, az_cells - 1 - offset);
        const int p = pick_first(rng);
        cells.emplace_back(n, p);
        cells.emplace_back(n, p + offset);
    }

    constexpr int kMaxAttempts = 100000;
    for (int attempt = 0; static_cast<int>(cells.size()) < spec.num_targets; ++attempt) {
        if (attempt >= kMaxAttempts)
            throw Error(ErrorCategory::config, "could not place " + std::to_string(spec.num_targets) +
                                                   " targets under the separation constraints");
        const int n = pick_range(rng);
        const int p = pick_az(rng);
        const bool ok = std::all_of(cells.begin(), cells.end(), [&](const std::pair<int, int>& c) {
            const bool az_ok = circular_sine_distance(sine_at(p), sine_at(c.second)) >= spec.azimuth_sep - 1e-9;
            const bool range_ok = circular_distance(n, c.first, range_cells) >= spec.range_sep_bins;
            if (spec.kind == SceneKind::AzimuthSpaced)
                return az_ok;
            if (spec.kind == SceneKind::ClosePair)
                return az_ok && range_ok;
            return az_ok || range_ok;
        });
        if (ok)
            cells.emplace_back(n, p);
    }
    for (const auto& [n, p] : cells)
        scene.targets.push_back({rgrid.delays[n], sine_at(p), std::polar(1.0, pick_phase(rng))});
    return scene;
}

DetectionReport match_targets(const Scene& truth, const SparseEstimate& est, const RangeGrid& rgrid,
                              const AzimuthGrid& agrid)
{
    const int range_cells = static_cast<int>(rgrid.size());
    const int num_truth = static_cast<int>(truth.size());
    const int num_est = static_cast<int>(est.support.size());

    std::vector<std::pair<int, int>> truth_cells;
    for (const Target& t : truth.targets)
        truth_cells.emplace_back(rgrid.nearest(t.delay), agrid.nearest(t.azimuth));

    // Box distances are taken from the true position in units of one cell.
    const double pri = rgrid.resolution * range_cells;
    constexpr double kSlack = 1e-9;
    // (distance^2, estimate, truth, strict) for every candidate inside the box.
    std::vector<std::tuple<double, int, int, bool>> candidates;
    for (int e = 0; e < num_est; ++e)
        for (int t = 0; t < num_truth; ++t) {
            const auto [n, p] = est.support[e];
            double dr = std::fmod(std::abs(rgrid.delays[n] - truth.targets[t].delay), pri);
            dr = std::min(dr, pri - dr) / rgrid.resolution;
            const double da = circular_sine_distance(agrid.values[p], truth.targets[t].azimuth) / agrid.spacing();
            if (dr <= kRangeTolerance + kSlack && da <= kAzimuthTolerance + kSlack)
                candidates.emplace_back(dr * dr + da * da, e, t, truth_cells[t] == est.support[e]);
        }
    std::sort(candidates.begin(), candidates.end());

    DetectionReport report;
    std::vector<bool> est_used(num_est, false), truth_used(num_truth, false);
    for (const auto& [dist, e, t, strict] : candidates) {
        if (est_used[e] || truth_used[t])
            continue;
        est_used[e] = truth_used[t] = true;
        report.hits.emplace_back(t, e);
        if (strict)
            ++report.strict_hits;
    }
    std::sort(report.hits.begin(), report.hits.end());
    for (int e = 0; e < num_est; ++e)
        if (!est_used[e])
            report.false_alarms.push_back(e);
    for (int t = 0; t < num_truth; ++t)
        if (!truth_used[t])
            report.misses.push_back(t);
    return report;
}

std::vector<MetricsRecord> run_comparison(const ExperimentConfig& cfg, const std::vector<ArrayMode>& modes)
{
    if (cfg.trials < 1)
        throw Error(ErrorCategory::config, "an experiment needs at least one trial");
    const std::uint64_t array_seed = cfg.array_seed.value_or(cfg.seed);

    std::vector<RadarSetup> setups;
    const ProfileParams params = cfg.params.value_or(profile_params(cfg.profile));
    for (ArrayMode mode : modes)
        setups.push_back(make_setup(build_mode(mode, array_seed), params));

    // Every mode shares the profile's range grid, so one scene per trial serves all.
    const RangeGrid& rgrid = setups.front().range_grid;
    std::vector<Scene> scenes(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t)
        scenes[t] = cfg.scene ? *cfg.scene : generate_scene(cfg.scene_spec, rgrid, stream_seed(cfg.seed, t, 1));

    std::vector<std::vector<TrialOutput>> outputs(modes.size(), std::vector<TrialOutput>(cfg.trials));
    parallel_trials(cfg.trials, cfg.threads, [&](int t) {
        const std::uint64_t noise_seed = stream_seed(cfg.seed, t, 2);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            outputs[i][t] = run_trial(setups[i], scenes[t], cfg, noise_seed);
            outputs[i][t].result.trial = t;
        }
    });

    std::vector<MetricsRecord> records;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        MetricsRecord rec;
        rec.mode = modes[i];
        rec.profile = cfg.profile;
        rec.snr_db = cfg.snr_db;
        rec.seed = cfg.seed;
        for (const TrialOutput& o : outputs[i]) {
            rec.trials.push_back(o.result);
            add_stages(rec.stages, o.stages);
        }
        aggregate(rec);
        records.push_back(std::move(rec));
    }
    return records;
}

MetricsRecord run_experiment(const ExperimentConfig& cfg)
{
    return run_comparison(cfg, {cfg.mode}).front();
}

ReductionSummary sampling_reduction(ArrayMode mode, const CognitivePlan& plan, const AdcConfig& adc)
{
    const ArrayConfig layout = build_mode(mode, 0);
    const double occupied = plan.occupied_bandwidth();
    // The channel carries channel_spacing of one-sided spectrum; its real-signal
    // Nyquist rate is twice that.
    const double channel_nyquist = 2.0 * plan.base.channel_spacing;

    ReductionSummary r;
    r.spectral_rate_factor = channel_nyquist / adc.rate;
    r.bandwidth_factor_with_guards = plan.base.channel_spacing / occupied;
    r.bandwidth_factor_no_guards = plan.base.signal_band / occupied;
    r.spatial_factor = static_cast<double>(layout.virtual_tx + layout.virtual_rx) /
                       static_cast<double>(layout.num_tx + layout.num_rx);
    r.combined_sampling_reduction_pct = 100.0 * (1.0 - 1.0 / (r.spectral_rate_factor * r.spatial_factor));
    r.hardware_channel_reduction_pct =
        100.0 * (1.0 - static_cast<double>(layout.num_tx * layout.num_rx) /
                           static_cast<double>(layout.virtual_tx * layout.virtual_rx));
    r.combined_bandwidth_factor = r.spatial_factor * r.bandwidth_factor_with_guards;
    return r;
}

PpiPoint ppi_point(double range_m, double sin_doa)
{
    const double s = std::clamp(sin_doa, -1.0, 1.0);
    return {range_m * s, range_m * std::sqrt(1.0 - s * s)};
}

std::pair<std::filesystem::path, std::filesystem::path>
emit_ppi(const DetectionReport& report, const Scene& truth, const SparseEstimate& est, const RangeGrid& rgrid,
         const AzimuthGrid& agrid, const std::filesystem::path& stem)
{
    std::filesystem::path base = stem;
    if (base.extension() == ".svg" || base.extension() == ".csv")
        base.replace_extension();
    const std::filesystem::path svg_path = base.string() + ".svg";
    const std::filesystem::path csv_path = base.string() + ".csv";

    struct Row {
        std::string kind;
        int index;
        double range_m, sin_doa;
        PpiPoint at;
        std::string status;
    };
    std::vector<Row> rows;
    std::vector<bool> truth_hit(truth.size(), false), est_hit(est.support.size(), false);
    for (const auto& [t, e] : report.hits) {
        truth_hit[t] = true;
        est_hit[e] = true;
    }
    for (std::size_t t = 0; t < truth.size(); ++t) {
        const double r = delay_to_range(truth.targets[t].delay);
        rows.push_back({"truth", static_cast<int>(t), r, truth.targets[t].azimuth,
                        ppi_point(r, truth.targets[t].azimuth), truth_hit[t] ? "detected" : "missed"});
    }
    for (std::size_t e = 0; e < est.support.size(); ++e) {
        const double r = delay_to_range(rgrid.delays[est.support[e].first]);
        const double s = agrid.values[est.support[e].second];
        rows.push_back({"estimate", static_cast<int>(e), r, s, ppi_point(r, s), est_hit[e] ? "hit" : "false_alarm"});
    }

    std::ofstream csv(csv_path);
    if (!csv)
        throw Error(ErrorCategory::io, "cannot write PPI table '" + csv_path.string() + "'");
    csv.precision(10);
    csv << "kind,index,range_m,sin_doa,east_m,north_m,status\n";
    for (const Row& r : rows)
        csv << r.kind << ',' << r.index << ',' << r.range_m << ',' << r.sin_doa << ',' << r.at.east << ','
            << r.at.north << ',' << r.status << '\n';
    if (!csv)
        throw Error(ErrorCategory::io, "failed while writing '" + csv_path.string() + "'");

    double extent = 1.0;
    for (const Row& r : rows)
        extent = std::max(extent, r.range_m);
    extent *= 1.1;
    const double size = 600.0;
    const auto sx = [&](double east) { return size / 2.0 + east / extent * (size / 2.0); };
    const auto sy = [&](double north) { return size / 2.0 - north / extent * (size / 2.0); };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << size / 2 << "\" x2=\"" << size << "\" y2=\"" << size / 2
        << "\" stroke=\"#bbb\"/>\n";
    svg << "<line x1=\"" << size / 2 << "\" y1=\"0\" x2=\"" << size / 2 << "\" y2=\"" << size
        << "\" stroke=\"#bbb\"/>\n";
    svg << "<circle class=\"north\" cx=\"" << size / 2 << "\" cy=\"8\" r=\"5\" fill=\"red\"/>\n";
    svg << "<circle class=\"radar\" cx=\"" << size / 2 << "\" cy=\"" << size / 2 << "\" r=\"3\" fill=\"black\"/>\n";
    for (const Row& r : rows) {
        std::string cls, colour;
        double radius = 4.0;
        if (r.kind == "truth") {
            cls = "truth";
            colour = "blue";
            radius = 7.0;
        } else if (r.status == "hit") {
            cls = "hit";
            colour = "green";
        } else {
            cls = "false-alarm";
            colour = "magenta";
        }
        svg << "<circle class=\"" << cls << "\" cx=\"" << sx(r.at.east) << "\" cy=\"" << sy(r.at.north)
            << "\" r=\"" << radius << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    }
    svg << "</svg>\n";

    std::ofstream svg_file(svg_path);
    if (!svg_file)
        throw Error(ErrorCategory::io, "cannot write PPI image '" + svg_path.string() + "'");
    svg_file << svg.str();
    if (!svg_file)
        throw Error(ErrorCategory::io, "failed while writing '" + svg_path.string() + "'");
    return {svg_path, csv_path};
}

}  // namespace subnyq

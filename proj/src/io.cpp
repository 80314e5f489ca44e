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

#include "subnyq/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "subnyq/error.hpp"

namespace subnyq {
namespace {

using json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out)
        throw Error(ErrorCategory::io, "cannot write '" + path.string() + "'");
    return out;
}

void put_u32(std::ostream& out, std::uint32_t v)
{
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in)
{
    std::array<unsigned char, 4> b{};
    in.read(reinterpret_cast<char*>(b.data()), 4);
    if (!in)
        throw Error(ErrorCategory::io, "truncated binary file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, double v) { put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
double get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

void put_cf32(std::ostream& out, const cplx& v)
{
    put_f32(out, v.real());
    put_f32(out, v.imag());
}

cplx get_cf32(std::istream& in)
{
    const double re = get_f32(in);
    const double im = get_f32(in);
    return {re, im};
}

std::map<std::string, std::string> parse_header(const std::filesystem::path& path)
{
    std::map<std::string, std::string> out;
    std::istringstream in(read_text(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

const std::string& header_field(const std::map<std::string, std::string>& h, const std::string& key,
                                const std::filesystem::path& path)
{
    const auto it = h.find(key);
    if (it == h.end())
        throw Error(ErrorCategory::io, "header '" + path.string() + "' lacks '" + key + "'");
    return it->second;
}

std::string hex(std::uint64_t v)
{
    std::ostringstream ss;
    ss << "0x" << std::hex << v;
    return ss.str();
}

SceneKind parse_scene_kind(const std::string& s)
{
    if (s == "separated") return SceneKind::Separated;
    if (s == "azimuth_spaced") return SceneKind::AzimuthSpaced;
    if (s == "close_pair") return SceneKind::ClosePair;
    throw Error(ErrorCategory::config, "unknown scene kind '" + s + "'");
}

std::string to_string(SceneKind k)
{
    switch (k) {
    case SceneKind::Separated: return "separated";
    case SceneKind::AzimuthSpaced: return "azimuth_spaced";
    case SceneKind::ClosePair: return "close_pair";
    }
    return "separated";
}

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<T>() : fallback;
}

}  // namespace

ToolkitConfig parse_config(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCategory::config, std::string("malformed configuration: ") + e.what());
    }

    ToolkitConfig cfg;
    try {
        cfg.profile = parse_profile(get_or<std::string>(root, "profile", "desk"));
        cfg.params = profile_params(cfg.profile);

        const json array = root.value("array", json::object());
        const ArrayMode mode = parse_mode(get_or<std::string>(array, "mode", "mode2"));
        cfg.array = build_mode(mode, get_or<std::uint64_t>(array, "seed", 1));
        if (array.contains("tx_positions"))
            cfg.array.tx_positions = array.at("tx_positions").get<std::vector<int>>();
        if (array.contains("rx_positions"))
            cfg.array.rx_positions = array.at("rx_positions").get<std::vector<int>>();
        cfg.array.wavelength = get_or(array, "wavelength_m", cfg.array.wavelength);
        validate(cfg.array);

        const json wf = root.value("waveform", json::object());
        ProfileParams& p = cfg.params;
        p.channel_spacing = get_or(wf, "channel_spacing_hz", p.channel_spacing);
        p.signal_band = get_or(wf, "signal_band_hz", p.signal_band);
        p.guard = get_or(wf, "guard_hz", p.guard);
        p.pri = get_or(wf, "pri_s", p.pri);
        p.pulse_width = get_or(wf, "pulse_width_s", p.pulse_width);
        p.total_power = get_or(wf, "total_power_w", p.total_power);
        p.phase_seed = get_or<std::uint64_t>(wf, "phase_seed", p.phase_seed);
        cfg.subbands = prototype_subbands();
        if (wf.contains("subbands_hz")) {
            const json& sb = wf.at("subbands_hz");
            if (sb.is_string() && sb.get<std::string>() == "conventional") {
                cfg.subbands = {{0.0, p.signal_band}};
            } else if (sb.is_array()) {
                cfg.subbands.clear();
                for (const json& b : sb)
                    cfg.subbands.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
            } else if (!(sb.is_string() && sb.get<std::string>() == "prototype")) {
                throw Error(ErrorCategory::config, "subbands_hz must be \"prototype\", \"conventional\" or a list");
            }
        }

        const json adc = root.value("adc", json::object());
        p.adc_rate = get_or(adc, "rate_hz", p.adc_rate);

        const json rec = root.value("recovery", json::object());
        p.range_cell_m = get_or(rec, "range_cell_m", p.range_cell_m);
        cfg.recovery.max_targets = get_or(rec, "max_targets", 0);
        cfg.recovery.residual_tol = get_or(rec, "residual_tol", kDefaultResidualTol);

        const json ex = root.value("experiment", json::object());
        ExperimentConfig& e = cfg.experiment;
        e.mode = cfg.array.mode;
        e.profile = cfg.profile;
        e.trials = get_or(ex, "trials", 1);
        e.seed = get_or<std::uint64_t>(ex, "seed", 1);
        e.array_seed = get_or<std::uint64_t>(array, "seed", e.seed);
        if (ex.contains("snr_db") && !ex.at("snr_db").is_null())
            e.snr_db = ex.at("snr_db").get<double>();
        e.max_targets = cfg.recovery.max_targets;
        e.residual_tol = cfg.recovery.residual_tol;
        e.params = cfg.params;
        e.threads = get_or(ex, "threads", 0);
        const json sc = ex.value("scene", json::object());
        e.scene_spec.kind = parse_scene_kind(get_or<std::string>(sc, "kind", "separated"));
        e.scene_spec.num_targets = get_or(sc, "num_targets", e.scene_spec.num_targets);
        e.scene_spec.range_sep_bins = get_or(sc, "range_sep_bins", e.scene_spec.range_sep_bins);
        e.scene_spec.azimuth_sep = get_or(sc, "azimuth_sep", e.scene_spec.azimuth_sep);
        e.scene_spec.placement_step = get_or(sc, "placement_step", e.scene_spec.placement_step);
        e.scene_spec.pair_spacing = get_or(sc, "pair_spacing", e.scene_spec.pair_spacing);
        if (ex.contains("modes"))
            for (const json& m : ex.at("modes"))
                cfg.modes.push_back(parse_mode(m.get<std::string>()));
        if (cfg.modes.empty())
            cfg.modes.push_back(cfg.array.mode);
        if (e.trials < 1)
            throw Error(ErrorCategory::config, "experiment.trials must be at least 1");
    } catch (const json::exception& e) {
        throw Error(ErrorCategory::config, std::string("invalid configuration field: ") + e.what());
    }
    return cfg;
}

ToolkitConfig load_config(const std::filesystem::path& path) { return parse_config(read_text(path)); }

std::string dump_config(const ToolkitConfig& c)
{
    json root;
    root["profile"] = std::string(to_string(c.profile));
    root["array"] = {{"mode", std::string(to_string(c.array.mode))},
                     {"seed", c.array.seed},
                     {"wavelength_m", c.array.wavelength},
                     {"tx_positions", c.array.tx_positions},
                     {"rx_positions", c.array.rx_positions}};
    json bands = json::array();
    for (const Subband& b : c.subbands)
        bands.push_back({b.lo, b.hi});
    root["waveform"] = {{"channel_spacing_hz", c.params.channel_spacing},
                        {"signal_band_hz", c.params.signal_band},
                        {"guard_hz", c.params.guard},
                        {"pri_s", c.params.pri},
                        {"pulse_width_s", c.params.pulse_width},
                        {"total_power_w", c.params.total_power},
                        {"phase_seed", c.params.phase_seed},
                        {"subbands_hz", bands}};
    root["adc"] = {{"rate_hz", c.params.adc_rate}};
    root["recovery"] = {{"range_cell_m", c.params.range_cell_m},
                        {"max_targets", c.recovery.max_targets},
                        {"residual_tol", c.recovery.residual_tol}};
    const ExperimentConfig& e = c.experiment;
    json modes = json::array();
    for (ArrayMode m : c.modes)
        modes.push_back(std::string(to_string(m)));
    root["experiment"] = {{"trials", e.trials},
                          {"seed", e.seed},
                          {"snr_db", e.snr_db ? json(*e.snr_db) : json(nullptr)},
                          {"threads", e.threads},
                          {"modes", modes},
                          {"scene",
                           {{"kind", to_string(e.scene_spec.kind)},
                            {"num_targets", e.scene_spec.num_targets},
                            {"range_sep_bins", e.scene_spec.range_sep_bins},
                            {"azimuth_sep", e.scene_spec.azimuth_sep},
                            {"placement_step", e.scene_spec.placement_step},
                            {"pair_spacing", e.scene_spec.pair_spacing}}}};
    return root.dump(2);
}

RadarSetup make_setup(const ToolkitConfig& config)
{
    return make_setup(config.array, config.params, config.subbands);
}

Scene parse_scene(const std::string& text, double pri)
{
    Scene scene;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t')
                c = ' ';
        std::istringstream fields(line);
        std::vector<double> values;
        std::string token;
        bool header_row = false;
        while (fields >> token) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(token, &used));
                if (used != token.size())
                    throw std::invalid_argument(token);
            } catch (const std::exception&) {
                if (values.empty() && scene.targets.empty()) {
                    header_row = true;
                    break;
                }
                throw Error(ErrorCategory::config, "scene line " + std::to_string(line_no) + ": bad number '" + token + "'");
            }
        }
        if (header_row || values.empty())
            continue;
        if (values.size() != 4)
            throw Error(ErrorCategory::config, "scene line " + std::to_string(line_no) +
                                                   " needs range_m, sin_doa, amplitude, phase_deg");
        scene.targets.push_back(
            {range_to_delay(values[0]), values[1], std::polar(values[2], values[3] * kPi / 180.0)});
    }
    validate(scene, pri);
    return scene;
}

Scene read_scene(const std::filesystem::path& path, double pri) { return parse_scene(read_text(path), pri); }

void write_scene(const std::filesystem::path& path, const Scene& scene)
{
    auto out = open_out(path);
    out.precision(17);
    out << "range_m,sin_doa,amplitude,phase_deg\n";
    for (const Target& t : scene.targets)
        out << delay_to_range(t.delay) << ',' << t.azimuth << ',' << std::abs(t.reflectivity) << ','
            << std::arg(t.reflectivity) * 180.0 / kPi << '\n';
    if (!out)
        throw Error(ErrorCategory::io, "failed while writing '" + path.string() + "'");
}

void write_iq(const std::filesystem::path& stem, const ReceivedBaseband& rx, std::uint64_t plan_hash)
{
    const std::filesystem::path iq = stem.string() + ".iq";
    const std::filesystem::path hdr = stem.string() + ".hdr";
    {
        auto out = open_out(iq, std::ios::binary);
        for (const Samples& x : rx.receivers)
            for (const cplx& v : x)
                put_cf32(out, v);
        if (!out)
            throw Error(ErrorCategory::io, "failed while writing '" + iq.string() + "'");
    }
    auto out = open_out(hdr);
    out.precision(17);
    out << "format = cf32le\n"
        << "sample_rate_hz = " << rx.sample_rate << '\n'
        << "pri_s = " << rx.pri << '\n'
        << "receivers = " << rx.receivers.size() << '\n'
        << "samples_per_receiver = " << (rx.receivers.empty() ? 0 : rx.receivers.front().size()) << '\n'
        << "plan_hash = " << hex(plan_hash) << '\n';
    // Pulse support as start:length runs.
    out << "pulse_support =";
    for (std::size_t n = 0; n < rx.pulse_support.size();) {
        if (!rx.pulse_support[n]) {
            ++n;
            continue;
        }
        std::size_t end = n;
        while (end < rx.pulse_support.size() && rx.pulse_support[end])
            ++end;
        out << ' ' << n << ':' << (end - n);
        n = end;
    }
    out << '\n';
}

ReceivedBaseband read_iq(const std::filesystem::path& stem, std::uint64_t* plan_hash)
{
    const std::filesystem::path hdr_path = stem.string() + ".hdr";
    const auto h = parse_header(hdr_path);
    if (header_field(h, "format", hdr_path) != "cf32le")
        throw Error(ErrorCategory::io, "unsupported sample format in '" + hdr_path.string() + "'");
    ReceivedBaseband rx;
    try {
        rx.sample_rate = std::stod(header_field(h, "sample_rate_hz", hdr_path));
        rx.pri = std::stod(header_field(h, "pri_s", hdr_path));
        const std::size_t receivers = std::stoul(header_field(h, "receivers", hdr_path));
        const std::size_t samples = std::stoul(header_field(h, "samples_per_receiver", hdr_path));
        if (plan_hash)
            *plan_hash = std::stoull(header_field(h, "plan_hash", hdr_path), nullptr, 16);

        std::ifstream in(stem.string() + ".iq", std::ios::binary);
        if (!in)
            throw Error(ErrorCategory::io, "cannot open '" + stem.string() + ".iq'");
        rx.receivers.assign(receivers, Samples(samples));
        for (Samples& x : rx.receivers)
            for (cplx& v : x)
                v = get_cf32(in);

        rx.pulse_support.assign(samples, 0);
        if (const auto it = h.find("pulse_support"); it != h.end()) {
            std::istringstream runs(it->second);
            std::string run;
            while (runs >> run) {
                const auto colon = run.find(':');
                const std::size_t start = std::stoul(run.substr(0, colon));
                const std::size_t len = std::stoul(run.substr(colon + 1));
                for (std::size_t n = start; n < start + len && n < samples; ++n)
                    rx.pulse_support[n] = 1;
            }
        }
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCategory::io, "malformed header '" + hdr_path.string() + "'");
    } catch (const std::out_of_range&) {
        throw Error(ErrorCategory::io, "malformed header '" + hdr_path.string() + "'");
    }
    return rx;
}

void write_pulse(const std::filesystem::path& stem, const BasebandPulse& pulse, std::uint64_t plan_hash)
{
    {
        auto out = open_out(stem.string() + ".iq", std::ios::binary);
        for (const cplx& v : pulse.samples)
            put_cf32(out, v);
    }
    auto out = open_out(stem.string() + ".hdr");
    out.precision(17);
    out << "format = cf32le\n"
        << "sample_rate_hz = " << pulse.sample_rate << '\n'
        << "m = " << pulse.tx_index << '\n'
        << "samples = " << pulse.samples.size() << '\n'
        << "plan_hash = " << hex(plan_hash) << '\n';
}

void write_coefficients(const std::filesystem::path& path, const CoefficientSet& y)
{
    auto out = open_out(path, std::ios::binary);
    out.write("SNQCOEF1", 8);
    const auto k = static_cast<std::uint32_t>(y.kappa.size());
    const auto q = static_cast<std::uint32_t>(y.num_rx());
    put_u32(out, static_cast<std::uint32_t>(y.num_tx()));
    put_u32(out, k);
    put_u32(out, q);
    put_u32(out, static_cast<std::uint32_t>(y.kappa.per_channel_n));
    for (int idx : y.kappa.indices)
        put_u32(out, static_cast<std::uint32_t>(idx));
    for (int m : y.tx_indices)
        put_u32(out, static_cast<std::uint32_t>(m));
    for (int r : y.rx_indices)
        put_u32(out, static_cast<std::uint32_t>(r));
    for (const CMatrix& mat : y.matrices)
        for (Eigen::Index i = 0; i < mat.rows(); ++i)
            for (Eigen::Index j = 0; j < mat.cols(); ++j)
                put_cf32(out, mat(i, j));
    if (!out)
        throw Error(ErrorCategory::io, "failed while writing '" + path.string() + "'");
}

CoefficientSet read_coefficients(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCategory::io, "cannot open '" + path.string() + "'");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "SNQCOEF1", 8) != 0)
        throw Error(ErrorCategory::io, "'" + path.string() + "' is not a coefficient blob");
    CoefficientSet y;
    const std::uint32_t m = get_u32(in), k = get_u32(in), q = get_u32(in);
    y.kappa.per_channel_n = static_cast<int>(get_u32(in));
    for (std::uint32_t i = 0; i < k; ++i)
        y.kappa.indices.push_back(static_cast<int>(get_u32(in)));
    for (std::uint32_t i = 0; i < m; ++i)
        y.tx_indices.push_back(static_cast<int>(get_u32(in)));
    for (std::uint32_t i = 0; i < q; ++i)
        y.rx_indices.push_back(static_cast<int>(get_u32(in)));
    for (std::uint32_t i = 0; i < m; ++i) {
        CMatrix mat(k, q);
        for (std::uint32_t r = 0; r < k; ++r)
            for (std::uint32_t c = 0; c < q; ++c)
                mat(r, c) = get_cf32(in);
        y.matrices.push_back(std::move(mat));
    }
    y.channels_processed = static_cast<int>(m * q);
    return y;
}

void write_coefficients_csv(const std::filesystem::path& path, const CoefficientSet& y)
{
    auto out = open_out(path);
    out.precision(9);
    out << "tx,k,rx,re,im\n";
    for (int i = 0; i < y.num_tx(); ++i)
        for (int r = 0; r < y.kappa.size(); ++r)
            for (int c = 0; c < y.num_rx(); ++c) {
                const cplx v = y.matrices[i](r, c);
                out << y.tx_indices[i] << ',' << y.kappa.indices[r] << ',' << y.rx_indices[c] << ',' << v.real()
                    << ',' << v.imag() << '\n';
            }
}

void write_estimate_csv(const std::filesystem::path& path, const SparseEstimate& est, const RangeGrid& rgrid,
                        const AzimuthGrid& agrid)
{
    auto out = open_out(path);
    out.precision(12);
    out << "n,p,range_m,sin_doa,re,im\n";
    for (std::size_t i = 0; i < est.support.size(); ++i) {
        const auto [n, p] = est.support[i];
        out << n << ',' << p << ',' << delay_to_range(rgrid.delays[n]) << ',' << agrid.values[p] << ','
            << est.amplitudes[i].real() << ',' << est.amplitudes[i].imag() << '\n';
    }
}

SparseEstimate read_estimate_csv(const std::filesystem::path& path)
{
    SparseEstimate est;
    std::istringstream in(read_text(path));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string f[6];
        for (auto& s : f)
            if (!std::getline(fields, s, ','))
                throw Error(ErrorCategory::io, "malformed estimate row '" + line + "'");
        try {
            est.support.emplace_back(std::stoi(f[0]), std::stoi(f[1]));
            est.amplitudes.emplace_back(std::stod(f[4]), std::stod(f[5]));
        } catch (const std::exception&) {
            throw Error(ErrorCategory::io, "malformed estimate row '" + line + "'");
        }
    }
    return est;
}

std::string metrics_json(const std::vector<MetricsRecord>& records)
{
    json root = json::array();
    for (const MetricsRecord& r : records) {
        json trials = json::array();
        for (const TrialResult& t : r.trials) {
            json hits = json::array();
            for (const auto& [truth, est] : t.report.hits)
                hits.push_back({truth, est});
            trials.push_back({{"trial", t.trial},
                              {"num_truth", t.num_truth},
                              {"num_estimates", t.num_estimates},
                              {"hits", hits},
                              {"false_alarms", t.report.false_alarms},
                              {"misses", t.report.misses},
                              {"strict_hits", t.report.strict_hits},
                              {"relative_residual", t.relative_residual}});
        }
        root.push_back({{"mode", std::string(to_string(r.mode))},
                        {"profile", std::string(to_string(r.profile))},
                        {"snr_db", r.snr_db ? json(*r.snr_db) : json(nullptr)},
                        {"seed", r.seed},
                        {"detection_rate", r.detection_rate},
                        {"strict_rate", r.strict_rate},
                        {"false_alarm_rate", r.false_alarm_rate},
                        {"all_detected_fraction", r.all_detected_fraction},
                        {"perfect_fraction", r.perfect_fraction},
                        {"stages",
                         {{"synthesize", r.stages.synthesize},
                          {"noise", r.stages.noise},
                          {"channelize", r.stages.channelize},
                          {"subsample", r.stages.subsample},
                          {"extract", r.stages.extract},
                          {"recover", r.stages.recover},
                          {"match", r.stages.match}}},
                        {"trials", trials}});
    }
    return root.dump(2);
}

std::string metrics_csv(const std::vector<MetricsRecord>& records)
{
    std::ostringstream out;
    out.precision(12);
    out << "mode,trial,num_truth,num_estimates,hits,strict_hits,false_alarms,misses,relative_residual\n";
    for (const MetricsRecord& r : records)
        for (const TrialResult& t : r.trials)
            out << to_string(r.mode) << ',' << t.trial << ',' << t.num_truth << ',' << t.num_estimates << ','
                << t.report.hits.size() << ',' << t.report.strict_hits << ',' << t.report.false_alarms.size() << ','
                << t.report.misses.size() << ',' << t.relative_residual << '\n';
    return out.str();
}

}  // namespace subnyq

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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <subnyq/subnyq.hpp>

namespace py = pybind11;
using namespace subnyq;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexArray to_array(const ReceivedBaseband& rx)
{
    const auto q = static_cast<py::ssize_t>(rx.receivers.size());
    const auto s = q ? static_cast<py::ssize_t>(rx.receivers.front().size()) : 0;
    ComplexArray out({q, s});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < q; ++i)
        for (py::ssize_t j = 0; j < s; ++j)
            view(i, j) = rx.receivers[i][j];
    return out;
}

ReceivedBaseband from_array(const ComplexArray& samples, const RadarSetup& setup)
{
    if (samples.ndim() != 2)
        throw Error(ErrorCategory::config, "receiver samples must be a 2-D array (receivers x samples)");
    auto view = samples.unchecked<2>();
    ReceivedBaseband rx;
    rx.sample_rate = setup.sample_rate;
    rx.pri = setup.plan.base.pri;
    rx.receivers.assign(view.shape(0), Samples(view.shape(1)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i)
        for (py::ssize_t j = 0; j < view.shape(1); ++j)
            rx.receivers[i][j] = view(i, j);
    return rx;
}

Scene to_scene(const std::vector<Target>& targets) { return Scene{targets}; }

}  // namespace

PYBIND11_MODULE(_subnyq, m)
{
    m.doc() = "Sub-Nyquist cognitive MIMO radar toolkit";

    py::enum_<ErrorCategory>(m, "ErrorCategory")
        .value("config", ErrorCategory::config)
        .value("index", ErrorCategory::index)
        .value("range", ErrorCategory::range)
        .value("coset", ErrorCategory::coset)
        .value("numeric", ErrorCategory::numeric)
        .value("io", ErrorCategory::io);

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::exception<Error>(m, "Error", PyExc_RuntimeError).cast<py::object>(); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& cls = error_type.get_stored();
            py::object err = cls(e.what());
            err.attr("category") = std::string(to_string(e.category()));
            err.attr("code") = e.exit_code();
            PyErr_SetObject(cls.ptr(), err.ptr());
        }
    });

    py::enum_<ArrayMode>(m, "ArrayMode")
        .value("Mode1Ula", ArrayMode::Mode1Ula)
        .value("Mode2Random8x10", ArrayMode::Mode2Random8x10)
        .value("Mode3Thinned4x5", ArrayMode::Mode3Thinned4x5)
        .value("Mode4Thinned8x10", ArrayMode::Mode4Thinned8x10);
    m.def("parse_mode", [](const std::string& s) { return parse_mode(s); });

    py::enum_<Profile>(m, "Profile").value("Full", Profile::Full).value("Desk", Profile::Desk);

    py::enum_<SceneKind>(m, "SceneKind")
        .value("Separated", SceneKind::Separated)
        .value("AzimuthSpaced", SceneKind::AzimuthSpaced)
        .value("ClosePair", SceneKind::ClosePair);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def_readonly("mode", &ArrayConfig::mode)
        .def_readonly("num_tx", &ArrayConfig::num_tx)
        .def_readonly("num_rx", &ArrayConfig::num_rx)
        .def_readonly("tx_positions", &ArrayConfig::tx_positions)
        .def_readonly("rx_positions", &ArrayConfig::rx_positions)
        .def_readonly("aperture_slots", &ArrayConfig::aperture_slots)
        .def_readonly("seed", &ArrayConfig::seed);
    m.def("build_mode", &build_mode, py::arg("mode"), py::arg("seed") = 1);

    py::class_<Subband>(m, "Subband")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Subband::lo)
        .def_readwrite("hi", &Subband::hi)
        .def("__repr__", [](const Subband& b) {
            return "Subband(" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + ")";
        });
    m.def("prototype_subbands", &prototype_subbands);

    py::class_<Target>(m, "Target")
        .def(py::init<double, double, cplx>(), py::arg("delay"), py::arg("azimuth"),
             py::arg("reflectivity") = cplx{1.0, 0.0})
        .def_readwrite("delay", &Target::delay)
        .def_readwrite("azimuth", &Target::azimuth)
        .def_readwrite("reflectivity", &Target::reflectivity)
        .def_property_readonly("range_m", [](const Target& t) { return delay_to_range(t.delay); });

    py::class_<ProfileParams>(m, "ProfileParams")
        .def(py::init([](Profile p) { return profile_params(p); }), py::arg("profile") = Profile::Desk)
        .def_readwrite("pri", &ProfileParams::pri)
        .def_readwrite("channel_spacing", &ProfileParams::channel_spacing)
        .def_readwrite("signal_band", &ProfileParams::signal_band)
        .def_readwrite("guard", &ProfileParams::guard)
        .def_readwrite("pulse_width", &ProfileParams::pulse_width)
        .def_readwrite("adc_rate", &ProfileParams::adc_rate)
        .def_readwrite("range_cell_m", &ProfileParams::range_cell_m)
        .def_readwrite("total_power", &ProfileParams::total_power)
        .def_readwrite("phase_seed", &ProfileParams::phase_seed);

    py::class_<RadarSetup>(m, "Setup")
        .def(py::init([](ArrayMode mode, Profile profile, std::uint64_t seed) { return make_setup(mode, profile, seed); }),
             py::arg("mode"), py::arg("profile") = Profile::Desk, py::arg("array_seed") = 1)
        .def(py::init([](const ArrayConfig& a, const ProfileParams& p, const std::vector<Subband>& b) {
                 return make_setup(a, p, b);
             }),
             py::arg("array"), py::arg("params"), py::arg("subbands") = prototype_subbands())
        .def_static("from_config", [](const std::string& text) { return make_setup(parse_config(text)); })
        .def_readonly("array", &RadarSetup::array)
        .def_readonly("sample_rate", &RadarSetup::sample_rate)
        .def_property_readonly("pri", [](const RadarSetup& s) { return s.plan.base.pri; })
        .def_property_readonly("gamma", [](const RadarSetup& s) { return s.plan.gamma; })
        .def_property_readonly("subbands", [](const RadarSetup& s) { return s.plan.subbands; })
        .def_property_readonly("kappa", [](const RadarSetup& s) { return s.kappa.indices; })
        .def_property_readonly("bins_per_channel", [](const RadarSetup& s) { return s.kappa.per_channel_n; })
        .def_property_readonly("range_delays", [](const RadarSetup& s) { return s.range_grid.delays; })
        .def_property_readonly("azimuth_grid", [](const RadarSetup& s) { return s.azimuth_grid.values; })
        .def("coherence", [](const RadarSetup& s) { return coherence(s.kappa); })
        .def("check_coset", [](const RadarSetup& s) { return check_coset(s.plan, s.adc); })
        .def("folded_images", [](const RadarSetup& s) { return folded_images(s.plan, s.adc); })
        .def("pulse_energies", [](const RadarSetup& s) {
            std::vector<double> e;
            for (const BasebandPulse& p : s.pulses.pulses)
                e.push_back(pulse_energy(p));
            return e;
        })
        .def("sampling_reduction", [](const RadarSetup& s) {
            const ReductionSummary r = sampling_reduction(s.array.mode, s.plan, s.adc);
            py::dict d;
            d["spectral_rate_factor"] = r.spectral_rate_factor;
            d["bandwidth_factor_with_guards"] = r.bandwidth_factor_with_guards;
            d["bandwidth_factor_no_guards"] = r.bandwidth_factor_no_guards;
            d["spatial_factor"] = r.spatial_factor;
            d["combined_sampling_reduction_pct"] = r.combined_sampling_reduction_pct;
            d["hardware_channel_reduction_pct"] = r.hardware_channel_reduction_pct;
            d["combined_bandwidth_factor"] = r.combined_bandwidth_factor;
            return d;
        });

    m.def(
        "generate_scene",
        [](const RadarSetup& s, SceneKind kind, int num_targets, int range_sep_bins, double azimuth_sep,
           double placement_step, double pair_spacing, std::uint64_t seed) {
            SceneSpec spec{kind, num_targets, range_sep_bins, azimuth_sep, placement_step, pair_spacing};
            return generate_scene(spec, s.range_grid, seed).targets;
        },
        py::arg("setup"), py::arg("kind") = SceneKind::Separated, py::arg("num_targets") = 10,
        py::arg("range_sep_bins") = 3, py::arg("azimuth_sep") = 0.05, py::arg("placement_step") = 0.025,
        py::arg("pair_spacing") = 0.02, py::arg("seed") = 1);

    m.def(
        "simulate",
        [](const RadarSetup& s, const std::vector<Target>& targets, std::optional<double> snr_db, std::uint64_t seed) {
            const Scene scene = to_scene(targets);
            validate(scene, s.plan.base.pri);
            ReceivedBaseband rx = synth_received(scene, s.array, s.plan, s.pulses);
            if (snr_db)
                rx = add_noise(rx, *snr_db, seed);
            return to_array(rx);
        },
        py::arg("setup"), py::arg("targets"), py::arg("snr_db") = py::none(), py::arg("seed") = 1,
        "Received baseband over one PRI, shape (receivers, samples).");

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_readonly("matrices", &CoefficientSet::matrices)
        .def_readonly("tx_indices", &CoefficientSet::tx_indices)
        .def_readonly("rx_indices", &CoefficientSet::rx_indices)
        .def_property_readonly("kappa", [](const CoefficientSet& y) { return y.kappa.indices; });

    m.def(
        "acquire",
        [](const RadarSetup& s, const ComplexArray& samples) {
            return acquire(from_array(samples, s), s.plan, s.adc, s.kappa, &s.pulses);
        },
        py::arg("setup"), py::arg("samples"));

    m.def(
        "oracle_coefficients",
        [](const RadarSetup& s, const std::vector<Target>& targets) {
            return oracle_coefficients(to_scene(targets), s.array, s.plan, s.kappa);
        },
        py::arg("setup"), py::arg("targets"));

    py::class_<SparseEstimate>(m, "Estimate")
        .def_readonly("support", &SparseEstimate::support)
        .def_readonly("amplitudes", &SparseEstimate::amplitudes)
        .def_readonly("residual_norm", &SparseEstimate::residual_norm)
        .def_readonly("relative_residual", &SparseEstimate::relative_residual)
        .def_readonly("residual_energy", &SparseEstimate::residual_energy);

    m.def(
        "recover",
        [](const RadarSetup& s, const CoefficientSet& y, int max_targets, double residual_tol) {
            py::gil_scoped_release release;
            return matrix_omp(y, s.dictionaries, max_targets, residual_tol);
        },
        py::arg("setup"), py::arg("coefficients"), py::arg("max_targets") = 10,
        py::arg("residual_tol") = kDefaultResidualTol);

    m.def(
        "match",
        [](const RadarSetup& s, const std::vector<Target>& targets, const SparseEstimate& est) {
            const DetectionReport r = match_targets(to_scene(targets), est, s.range_grid, s.azimuth_grid);
            py::dict d;
            d["hits"] = r.hits;
            d["false_alarms"] = r.false_alarms;
            d["misses"] = r.misses;
            d["strict_hits"] = r.strict_hits;
            return d;
        },
        py::arg("setup"), py::arg("targets"), py::arg("estimate"));

    m.def(
        "run_experiment_json",
        [](const std::string& config_json) {
            const ToolkitConfig cfg = parse_config(config_json);
            py::gil_scoped_release release;
            return metrics_json(run_comparison(cfg.experiment, cfg.modes));
        },
        py::arg("config_json"), "Runs the configured experiment and returns the metrics as JSON text.");

    m.def("coherence", [](const std::vector<int>& kappa, int n) { return coherence(KappaSet{kappa, n}); },
          py::arg("kappa"), py::arg("bins_per_channel"));

    m.def(
        "ppi_point",
        [](double range_m, double sin_doa) {
            const PpiPoint p = ppi_point(range_m, sin_doa);
            return py::make_tuple(p.east, p.north);
        },
        py::arg("range_m"), py::arg("sin_doa"));

    m.attr("__version__") = "0.1.0";
}

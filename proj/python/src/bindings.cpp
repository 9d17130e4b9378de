// SPDX-License-Identifier: Apache-2.0
//
// vaapl - omni-directional pathloss estimation with directional-antenna virtual arrays
// Copyright (C) 2026 vaapl contributors
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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vaapl/runner.hpp"
#include "vaapl/version.hpp"

namespace py = pybind11;
using namespace vaapl;

namespace
{

py::array_t<std::complex<double>> complex_matrix(const std::vector<std::complex<double>> &data,
                                                 std::size_t rows, std::size_t cols)
{
    py::array_t<std::complex<double>> out({rows, cols});
    std::copy(data.begin(), data.end(), out.mutable_data());
    return out;
}

py::array_t<double> real_matrix(const std::vector<double> &data, std::size_t rows,
                                std::size_t cols)
{
    py::array_t<double> out({rows, cols});
    std::copy(data.begin(), data.end(), out.mutable_data());
    return out;
}

PeakSearchConfig make_peak_config(double threshold_db, double dynamic_range_db,
                                  int delay_neighborhood, int angle_neighborhood)
{
    PeakSearchConfig config;
    config.threshold_db_above_noise = threshold_db;
    config.dynamic_range_db = dynamic_range_db;
    config.delay_neighborhood = delay_neighborhood;
    config.angle_neighborhood = angle_neighborhood;
    return config;
}

GainBudget make_budget(const UcaGeometry &geometry, const AntennaPattern &element,
                       double window_deg, double tx_gain_db, double rx_gain_db)
{
    GainBudget budget;
    budget.tx_gain_linear = db_to_linear(tx_gain_db);
    budget.rx_gain_linear = db_to_linear(rx_gain_db);
    budget.array_gain = [geometry, element, window_deg](double freq_hz, double azimuth_deg) {
        return array_gain(geometry, element, freq_hz, azimuth_deg, window_deg);
    };
    return budget;
}

py::dict estimate_dict(const PathlossEstimate &estimate)
{
    py::dict out;
    out["method"] = method_name(estimate.method);
    out["pathloss_db"] = estimate.pathloss_db;
    out["path_count"] = estimate.path_count;
    py::list contributions;
    for (const auto &c : estimate.contributions)
    {
        py::dict item;
        item["azimuth_deg"] = c.azimuth_deg;
        item["delay_s"] = c.delay_s;
        item["raw_power_linear"] = c.raw_power_linear;
        item["normalized_power_linear"] = c.normalized_power_linear;
        contributions.append(item);
    }
    out["contributions"] = contributions;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Omni-directional pathloss estimation from virtual-antenna-array and "
              "directional-scan channel soundings";
    m.attr("__version__") = version_string;
    m.attr("SPEED_OF_LIGHT") = speed_of_light;

    py::class_<AntennaPattern>(m, "AntennaPattern",
                               "Boresight-normalized 2-D complex azimuth pattern")
        .def_static("isotropic", &AntennaPattern::isotropic)
        .def_static("gaussian", &AntennaPattern::gaussian, py::arg("hpbw_deg"),
                    py::arg("gain_dbi") = 0.0)
        .def_static("load_csv",
                    py::overload_cast<const std::filesystem::path &>(&AntennaPattern::load_csv),
                    py::arg("file"))
        .def("eval", &AntennaPattern::eval, py::arg("freq_hz"), py::arg("angle_deg"))
        .def_property_readonly("gain_dbi", &AntennaPattern::gain_dbi)
        .def_property_readonly("frequency_dependent", &AntennaPattern::frequency_dependent);

    py::class_<UcaGeometry>(m, "UcaGeometry", "Uniform circular array of P elements on radius r")
        .def(py::init<std::size_t, double>(), py::arg("num_elements"), py::arg("radius_m"))
        .def_property_readonly("num_elements", &UcaGeometry::num_elements)
        .def_property_readonly("radius_m", &UcaGeometry::radius_m)
        .def("element_angles_deg", &UcaGeometry::element_angles_deg);

    py::class_<FrequencyGrid>(m, "FrequencyGrid", "Uniform sweep grid [f_lower, f_upper]")
        .def(py::init<double, double, std::size_t>(), py::arg("f_lower_hz"), py::arg("f_upper_hz"),
             py::arg("num_points"))
        .def_property_readonly("f_lower_hz", &FrequencyGrid::f_lower_hz)
        .def_property_readonly("f_upper_hz", &FrequencyGrid::f_upper_hz)
        .def_property_readonly("num_points", &FrequencyGrid::num_points)
        .def_property_readonly("spacing_hz", &FrequencyGrid::spacing_hz)
        .def_property_readonly("center_hz", &FrequencyGrid::center_hz)
        .def_property_readonly("unambiguous_delay_s", &FrequencyGrid::unambiguous_delay_s)
        .def("freqs_hz", [](const FrequencyGrid &grid) {
            py::array_t<double> out(grid.num_points());
            for (std::size_t i = 0; i < grid.num_points(); ++i)
                out.mutable_data()[i] = grid.freq_hz(i);
            return out;
        });

    py::class_<Path>(m, "Path", "Ground-truth path: azimuth, delay, complex amplitude")
        .def(py::init<double, double, std::complex<double>>(), py::arg("azimuth_deg"),
             py::arg("delay_s"), py::arg("amplitude"))
        .def_readonly("azimuth_deg", &Path::azimuth_deg)
        .def_readonly("delay_s", &Path::delay_s)
        .def_readonly("amplitude", &Path::amplitude)
        .def_property_readonly("power_linear", &Path::power_linear);

    py::class_<DetectedPath>(m, "DetectedPath", "Detected path: azimuth, delay, linear power")
        .def_readonly("azimuth_deg", &DetectedPath::azimuth_deg)
        .def_readonly("delay_s", &DetectedPath::delay_s)
        .def_readonly("power_linear", &DetectedPath::power_linear)
        .def("__repr__", [](const DetectedPath &d) {
            return "DetectedPath(azimuth_deg=" + std::to_string(d.azimuth_deg) +
                   ", delay_s=" + std::to_string(d.delay_s) +
                   ", power_linear=" + std::to_string(d.power_linear) + ")";
        });

    py::class_<CfrMatrix>(m, "CfrMatrix", "Rows x frequencies complex channel responses")
        .def_property_readonly("source",
                               [](const CfrMatrix &cfr) {
                                   return cfr.source() == CfrMatrix::Source::vaa ? "vaa" : "dss";
                               })
        .def_property_readonly("num_rows", &CfrMatrix::num_rows)
        .def_property_readonly("grid", &CfrMatrix::grid)
        .def("to_numpy", [](const CfrMatrix &cfr) {
            return complex_matrix(cfr.data(), cfr.num_rows(), cfr.num_freqs());
        });

    py::class_<BeamSpectrum>(m, "BeamSpectrum",
                             "Beamformed spectrum; rows are steering angles, columns frequencies")
        .def_property_readonly("angles_deg", &BeamSpectrum::angles_deg)
        .def_property_readonly("grid", &BeamSpectrum::grid)
        .def("to_numpy", [](const BeamSpectrum &q) {
            return complex_matrix(q.data(), q.num_angles(), q.num_freqs());
        });

    py::class_<Padp>(m, "Padp",
                     "Power angular delay profile; rows are angles, columns delay bins")
        .def_property_readonly("kind",
                               [](const Padp &p) { return p.kind() == PadpKind::vaa ? "vaa" : "dss"; })
        .def_property_readonly("delay_grid_s", &Padp::delay_grid_s)
        .def_property_readonly("angle_grid_deg", &Padp::angle_grid_deg)
        .def_property_readonly("max_power", &Padp::max_power)
        .def("to_numpy", [](const Padp &p) {
            return real_matrix(p.power(), p.num_angles(), p.num_delays());
        });

    m.def("synth_vaa_cfr", &synth_vaa_cfr, py::arg("paths"), py::arg("geometry"),
          py::arg("element"), py::arg("grid"),
          "Synthesize the virtual-array acquisition of a path set");
    m.def("synth_dss_cfr", &synth_dss_cfr, py::arg("paths"), py::arg("rotation_angles_deg"),
          py::arg("element"), py::arg("grid"),
          "Synthesize the directional-scan acquisition of a path set");
    m.def("add_noise", &add_noise, py::arg("cfr"), py::arg("noise_power_db"), py::arg("seed"),
          "Add circularly-symmetric complex Gaussian noise per sample");
    m.def("free_space_pathloss_db", &free_space_pathloss_db, py::arg("distance_m"),
          py::arg("freq_hz"));
    m.def("true_omni_pathloss_db", &true_omni_pathloss_db, py::arg("paths"));
    m.def("make_steering_grid", &make_steering_grid, py::arg("count"));

    m.def(
        "beamform_spectrum",
        [](const CfrMatrix &cfr, double window_deg, const std::vector<double> &steering,
           unsigned threads) {
            BeamformConfig config;
            config.window_half_width_deg = window_deg;
            config.steering_angles_deg = steering;
            return beamform_spectrum(cfr, config, threads);
        },
        py::arg("cfr"), py::arg("window_half_width_deg") = 90.0,
        py::arg("steering_angles_deg") = std::vector<double>{}, py::arg("threads") = 1,
        "Windowed classical beamformer over the steering grid");

    m.def(
        "array_beam_pattern",
        [](const UcaGeometry &geometry, const AntennaPattern &element, double freq_hz,
           double path_azimuth_deg, const std::vector<double> &steer_grid, double window_deg) {
            auto pattern = array_beam_pattern(geometry, element, freq_hz, path_azimuth_deg,
                                              steer_grid, window_deg);
            py::array_t<std::complex<double>> out(pattern.size());
            std::copy(pattern.begin(), pattern.end(), out.mutable_data());
            return out;
        },
        py::arg("geometry"), py::arg("element"), py::arg("freq_hz"), py::arg("path_azimuth_deg"),
        py::arg("steer_grid_deg"), py::arg("window_half_width_deg") = 90.0);
    m.def("array_gain", &array_gain, py::arg("geometry"), py::arg("element"), py::arg("freq_hz"),
          py::arg("path_azimuth_deg"), py::arg("window_half_width_deg") = 90.0);

    m.def(
        "compute_padp",
        [](py::object input, std::size_t zero_pad, const std::string &window, unsigned threads) {
            PadpOptions options;
            options.zero_pad_factor = zero_pad;
            options.window = window == "hann" ? SpectralWindow::hann : SpectralWindow::rectangular;
            options.threads = threads;
            if (py::isinstance<BeamSpectrum>(input))
                return compute_padp(input.cast<const BeamSpectrum &>(), options);
            return compute_padp(input.cast<const CfrMatrix &>(), options);
        },
        py::arg("spectrum_or_scan"), py::arg("zero_pad") = 1, py::arg("window") = "rectangular",
        py::arg("threads") = 1,
        "Inverse-transform a beamformed spectrum or a directional scan into a profile");

    m.def("aggregate_pdp", &aggregate_pdp, py::arg("padp"));
    m.def("estimate_noise_floor", &estimate_noise_floor, py::arg("padp"));

    m.def(
        "detect_paths",
        [](const Padp &padp, double threshold_db, double dynamic_range_db, int delay_neighborhood,
           int angle_neighborhood) {
            return detect_paths(padp, make_peak_config(threshold_db, dynamic_range_db,
                                                       delay_neighborhood, angle_neighborhood));
        },
        py::arg("padp"), py::arg("threshold_db_above_noise") = 6.0,
        py::arg("dynamic_range_db") = 25.0, py::arg("delay_neighborhood") = 1,
        py::arg("angle_neighborhood") = 1,
        "Local-maxima multipath detection on a profile");

    m.def(
        "pl_omni_vaa",
        [](const std::vector<DetectedPath> &detected, const UcaGeometry &geometry,
           const AntennaPattern &element, double f_center_hz, double tx_gain_db, double rx_gain_db,
           double window_deg) {
            GainBudget budget = make_budget(geometry, element, window_deg, tx_gain_db, rx_gain_db);
            return estimate_dict(pl_omni_vaa(detected, budget, f_center_hz));
        },
        py::arg("detected"), py::arg("geometry"), py::arg("element"), py::arg("f_center_hz"),
        py::arg("tx_gain_db") = 0.0, py::arg("rx_gain_db") = 0.0,
        py::arg("window_half_width_deg") = 90.0,
        "Pathloss from detected paths, normalized by antenna and array gains");

    m.def(
        "pl_omni_ref1",
        [](const Padp &dss_padp, double tx_gain_db, double rx_gain_db, double threshold_db) {
            GainBudget budget;
            budget.tx_gain_linear = db_to_linear(tx_gain_db);
            budget.rx_gain_linear = db_to_linear(rx_gain_db);
            return estimate_dict(pl_omni_ref1(dss_padp, budget, threshold_db));
        },
        py::arg("dss_padp"), py::arg("tx_gain_db") = 0.0, py::arg("rx_gain_db") = 0.0,
        py::arg("threshold_db_above_noise") = 6.0,
        "Reference estimator: sum every profile cell above the noise gate");

    m.def(
        "pl_omni_ref2",
        [](const Padp &dss_padp, double tx_gain_db, double rx_gain_db, double threshold_db,
           double dynamic_range_db) {
            GainBudget budget;
            budget.tx_gain_linear = db_to_linear(tx_gain_db);
            budget.rx_gain_linear = db_to_linear(rx_gain_db);
            return estimate_dict(pl_omni_ref2(
                dss_padp, budget, make_peak_config(threshold_db, dynamic_range_db, 1, 1)));
        },
        py::arg("dss_padp"), py::arg("tx_gain_db") = 0.0, py::arg("rx_gain_db") = 0.0,
        py::arg("threshold_db_above_noise") = 6.0, py::arg("dynamic_range_db") = 25.0,
        "Reference estimator: strongest angular cell per detected delay bin");

    // Scenario-level entry points mirroring the command line tool.
    m.def("preset_names", &preset_names);
    m.def("preset_json", [](const std::string &name) { return scenario_to_json_text(preset(name)); },
          py::arg("name"));
    m.def("random_corridor_scene_json",
          [](std::uint64_t seed) { return scenario_to_json_text(random_corridor_scene(seed)); },
          py::arg("seed"));

    m.def(
        "run_scenario",
        [](const std::string &config, py::object out_dir, bool force) {
            ScenarioConfig cfg =
                is_preset(config) ? preset(config) : scenario_from_json_text(config);
            if (!out_dir.is_none())
            {
                RunOptions options;
                options.out_dir = out_dir.cast<std::filesystem::path>();
                options.force = force;
                run(cfg, options);
            }
            SceneResults results = run_scene(cfg);
            py::dict out;
            py::list summary;
            for (const auto &r : results.summary)
                summary.append(estimate_dict(r));
            out["summary"] = summary;
            out["detected"] = results.detected;
            out["f_center_hz"] = results.f_center_hz;
            return out;
        },
        py::arg("config"), py::arg("out_dir") = py::none(), py::arg("force") = false,
        "Run the full pipeline on a preset name or config JSON text; optionally "
        "write the CSV artifacts to out_dir");
}

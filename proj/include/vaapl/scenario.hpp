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

#ifndef VAAPL_SCENARIO_HPP
#define VAAPL_SCENARIO_HPP

#include "vaapl/beamform.hpp"
#include "vaapl/channel.hpp"
#include "vaapl/padp.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vaapl
{

struct ElementPatternConfig
{
    std::string kind = "gaussian-beam"; // isotropic | gaussian-beam | tabulated
    double hpbw_deg = 40.0;
    double gain_dbi = 0.0;
    std::string file; // pattern CSV, tabulated only
};

struct NoiseConfig
{
    bool enabled = false;
    double floor_db = -200.0; // per-sample complex noise power
    std::uint64_t seed = 1;
};

struct PathConfig
{
    double azimuth_deg = 0.0;
    double delay_ns = 0.0;
    double power_db = 0.0;
    double phase_deg = 0.0;
};

// Full description of one synthetic scene plus all processing parameters.
// Everything an output file depends on lives here, so a config (plus its
// seed) pins the run bit-for-bit.
struct ScenarioConfig
{
    std::string scenario_id = "unnamed";

    double f_lower_hz = 28e9;
    double f_upper_hz = 30e9;
    std::size_t frequency_points = 1001;

    std::size_t elements = 240;
    double radius_m = 0.15;

    ElementPatternConfig element_pattern;
    double rx_gain_dbi = 0.0;

    std::vector<PathConfig> paths;
    NoiseConfig noise;

    double window_half_width_deg = 90.0;
    std::size_t steering_count = 0; // 0: one steering angle per element

    PeakSearchConfig detection;

    std::size_t zero_pad = 1;
    SpectralWindow spectral_window = SpectralWindow::rectangular;

    double f_center_hz = 0.0; // 0: mid-band
    bool per_frequency_array_gain = false;
    double link_distance_m = 0.0; // 0: derive from the earliest path
    unsigned threads = 1;

    FrequencyGrid frequency_grid() const;
    UcaGeometry geometry() const;
    AntennaPattern element(const std::filesystem::path &base_dir = {}) const;
    PathSet truth() const;
    std::vector<double> steering_grid() const;
    double effective_f_center_hz() const;
    void validate() const;
};

// JSON round trip. Parsing reports unknown or ill-typed fields with their
// JSON location; serialization is canonical (sorted keys) and is what the
// manifest's config hash is computed over.
ScenarioConfig scenario_from_json_text(const std::string &text, const std::string &name = "<config>");
ScenarioConfig load_scenario(const std::filesystem::path &file);
std::string scenario_to_json_text(const ScenarioConfig &config);

// Built-in scenes modeled on an indoor-corridor sounding campaign at
// 28-30 GHz: LOS links of 8/14/22/30 m and around-the-corner links of
// 11.4/17.4/25.4/33.4 m.
bool is_preset(const std::string &name);
ScenarioConfig preset(const std::string &name);
std::vector<std::string> preset_names();

// Reproducible multi-path scene for randomized comparisons: 4-8 paths on the
// processing grids, one pair sharing a delay bin at well-separated azimuths,
// the rest separated by at least 3 delay bins.
ScenarioConfig random_corridor_scene(std::uint64_t seed);

} // namespace vaapl

#endif

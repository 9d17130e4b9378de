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

#include "vaapl/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace vaapl
{

using nlohmann::json;

FrequencyGrid ScenarioConfig::frequency_grid() const
{
    return FrequencyGrid(f_lower_hz, f_upper_hz, frequency_points);
}

UcaGeometry ScenarioConfig::geometry() const { return UcaGeometry(elements, radius_m); }

AntennaPattern ScenarioConfig::element(const std::filesystem::path &base_dir) const
{
    if (element_pattern.kind == "isotropic")
        return AntennaPattern::isotropic();
    if (element_pattern.kind == "gaussian-beam")
        return AntennaPattern::gaussian(element_pattern.hpbw_deg, element_pattern.gain_dbi);
    if (element_pattern.kind == "tabulated")
    {
        if (element_pattern.file.empty())
            throw std::invalid_argument("element_pattern: tabulated kind requires a file");
        std::filesystem::path p(element_pattern.file);
        if (p.is_relative() && !base_dir.empty())
            p = base_dir / p;
        return AntennaPattern::load_csv(p);
    }
    throw std::invalid_argument("element_pattern: unknown kind '" + element_pattern.kind + "'");
}

PathSet ScenarioConfig::truth() const
{
    PathSet paths_out;
    paths_out.reserve(paths.size());
    for (const auto &p : paths)
    {
        std::complex<double> amp =
            std::polar(db_to_amplitude(p.power_db), deg2rad(p.phase_deg));
        paths_out.emplace_back(p.azimuth_deg, p.delay_ns * 1e-9, amp);
    }
    return paths_out;
}

std::vector<double> ScenarioConfig::steering_grid() const
{
    return make_steering_grid(steering_count == 0 ? elements : steering_count);
}

double ScenarioConfig::effective_f_center_hz() const
{
    return f_center_hz > 0.0 ? f_center_hz : 0.5 * (f_lower_hz + f_upper_hz);
}

void ScenarioConfig::validate() const
{
    frequency_grid();
    geometry();
    detection.validate();
    if (!(window_half_width_deg > 0.0) || !(window_half_width_deg <= 180.0))
        throw std::invalid_argument("beamform window half-width must lie in (0, 180]");
    if (zero_pad < 1)
        throw std::invalid_argument("zero_pad must be at least 1");
    if (threads < 1)
        throw std::invalid_argument("threads must be at least 1");
    if (!std::isfinite(rx_gain_dbi))
        throw std::invalid_argument("rx_gain_dbi must be finite");
    double max_delay_ns = frequency_grid().unambiguous_delay_s() * 1e9;
    for (const auto &p : paths)
    {
        if (!(p.delay_ns >= 0.0) || !(p.delay_ns < max_delay_ns))
            throw std::invalid_argument("path delay " + std::to_string(p.delay_ns) +
                                        " ns outside [0, " + std::to_string(max_delay_ns) + ") ns");
        if (!std::isfinite(p.power_db) || !std::isfinite(p.azimuth_deg) || !std::isfinite(p.phase_deg))
            throw std::invalid_argument("path fields must be finite");
    }
}

namespace
{

// Strict field access: wrong types and unknown keys fail with the JSON path.
template <typename T>
T get_field(const json &obj, const std::string &context, const std::string &key, T fallback)
{
    if (!obj.contains(key))
        return fallback;
    try
    {
        return obj.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw std::runtime_error("config: field '" + context + key + "': " + e.what());
    }
}

void check_known_keys(const json &obj, const std::string &context,
                      std::initializer_list<const char *> known)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool ok = false;
        for (const char *k : known)
            if (it.key() == k)
            {
                ok = true;
                break;
            }
        if (!ok)
            throw std::runtime_error("config: unknown field '" + context + it.key() + "'");
    }
}

} // namespace

ScenarioConfig scenario_from_json_text(const std::string &text, const std::string &name)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::runtime_error("config: " + name + ": " + e.what());
    }
    if (!root.is_object())
        throw std::runtime_error("config: " + name + ": top level must be an object");

    check_known_keys(root, "",
                     {"scenario_id", "frequency", "geometry", "element_pattern", "rx_gain_dbi",
                      "paths", "noise", "beamform", "detection", "transform", "estimation",
                      "link_distance_m", "threads"});

    ScenarioConfig cfg;
    cfg.scenario_id = get_field<std::string>(root, "", "scenario_id", cfg.scenario_id);

    if (root.contains("frequency"))
    {
        const json &f = root.at("frequency");
        check_known_keys(f, "frequency.", {"f_lower_hz", "f_upper_hz", "points"});
        cfg.f_lower_hz = get_field<double>(f, "frequency.", "f_lower_hz", cfg.f_lower_hz);
        cfg.f_upper_hz = get_field<double>(f, "frequency.", "f_upper_hz", cfg.f_upper_hz);
        cfg.frequency_points = get_field<std::size_t>(f, "frequency.", "points", cfg.frequency_points);
    }
    if (root.contains("geometry"))
    {
        const json &g = root.at("geometry");
        check_known_keys(g, "geometry.", {"elements", "radius_m"});
        cfg.elements = get_field<std::size_t>(g, "geometry.", "elements", cfg.elements);
        cfg.radius_m = get_field<double>(g, "geometry.", "radius_m", cfg.radius_m);
    }
    if (root.contains("element_pattern"))
    {
        const json &e = root.at("element_pattern");
        check_known_keys(e, "element_pattern.", {"kind", "hpbw_deg", "gain_dbi", "file"});
        cfg.element_pattern.kind = get_field<std::string>(e, "element_pattern.", "kind",
                                                          cfg.element_pattern.kind);
        cfg.element_pattern.hpbw_deg =
            get_field<double>(e, "element_pattern.", "hpbw_deg", cfg.element_pattern.hpbw_deg);
        cfg.element_pattern.gain_dbi =
            get_field<double>(e, "element_pattern.", "gain_dbi", cfg.element_pattern.gain_dbi);
        cfg.element_pattern.file =
            get_field<std::string>(e, "element_pattern.", "file", cfg.element_pattern.file);
    }
    cfg.rx_gain_dbi = get_field<double>(root, "", "rx_gain_dbi", cfg.rx_gain_dbi);

    if (root.contains("paths"))
    {
        const json &paths = root.at("paths");
        if (!paths.is_array())
            throw std::runtime_error("config: field 'paths' must be an array");
        std::size_t i = 0;
        for (const auto &p : paths)
        {
            std::string ctx = "paths[" + std::to_string(i) + "].";
            check_known_keys(p, ctx, {"azimuth_deg", "delay_ns", "power_db", "phase_deg"});
            PathConfig pc;
            if (!p.contains("azimuth_deg") || !p.contains("delay_ns") || !p.contains("power_db"))
                throw std::runtime_error("config: " + ctx +
                                         " requires azimuth_deg, delay_ns and power_db");
            pc.azimuth_deg = get_field<double>(p, ctx, "azimuth_deg", 0.0);
            pc.delay_ns = get_field<double>(p, ctx, "delay_ns", 0.0);
            pc.power_db = get_field<double>(p, ctx, "power_db", 0.0);
            pc.phase_deg = get_field<double>(p, ctx, "phase_deg", 0.0);
            cfg.paths.push_back(pc);
            ++i;
        }
    }
    if (root.contains("noise"))
    {
        const json &n = root.at("noise");
        check_known_keys(n, "noise.", {"enabled", "floor_db", "seed"});
        cfg.noise.enabled = get_field<bool>(n, "noise.", "enabled", cfg.noise.enabled);
        cfg.noise.floor_db = get_field<double>(n, "noise.", "floor_db", cfg.noise.floor_db);
        cfg.noise.seed = get_field<std::uint64_t>(n, "noise.", "seed", cfg.noise.seed);
    }
    if (root.contains("beamform"))
    {
        const json &b = root.at("beamform");
        check_known_keys(b, "beamform.", {"window_half_width_deg", "steering_count"});
        cfg.window_half_width_deg =
            get_field<double>(b, "beamform.", "window_half_width_deg", cfg.window_half_width_deg);
        cfg.steering_count = get_field<std::size_t>(b, "beamform.", "steering_count",
                                                    cfg.steering_count);
    }
    if (root.contains("detection"))
    {
        const json &d = root.at("detection");
        check_known_keys(d, "detection.",
                         {"threshold_db_above_noise", "dynamic_range_db", "delay_neighborhood",
                          "angle_neighborhood"});
        cfg.detection.threshold_db_above_noise = get_field<double>(
            d, "detection.", "threshold_db_above_noise", cfg.detection.threshold_db_above_noise);
        cfg.detection.dynamic_range_db =
            get_field<double>(d, "detection.", "dynamic_range_db", cfg.detection.dynamic_range_db);
        cfg.detection.delay_neighborhood =
            get_field<int>(d, "detection.", "delay_neighborhood", cfg.detection.delay_neighborhood);
        cfg.detection.angle_neighborhood =
            get_field<int>(d, "detection.", "angle_neighborhood", cfg.detection.angle_neighborhood);
    }
    if (root.contains("transform"))
    {
        const json &t = root.at("transform");
        check_known_keys(t, "transform.", {"zero_pad", "window"});
        cfg.zero_pad = get_field<std::size_t>(t, "transform.", "zero_pad", cfg.zero_pad);
        std::string window = get_field<std::string>(t, "transform.", "window", "rectangular");
        if (window == "rectangular")
            cfg.spectral_window = SpectralWindow::rectangular;
        else if (window == "hann")
            cfg.spectral_window = SpectralWindow::hann;
        else
            throw std::runtime_error("config: transform.window must be 'rectangular' or 'hann'");
    }
    if (root.contains("estimation"))
    {
        const json &e = root.at("estimation");
        check_known_keys(e, "estimation.", {"f_center_hz", "per_frequency_array_gain"});
        cfg.f_center_hz = get_field<double>(e, "estimation.", "f_center_hz", cfg.f_center_hz);
        cfg.per_frequency_array_gain = get_field<bool>(e, "estimation.", "per_frequency_array_gain",
                                                       cfg.per_frequency_array_gain);
    }
    cfg.link_distance_m = get_field<double>(root, "", "link_distance_m", cfg.link_distance_m);
    cfg.threads = get_field<unsigned>(root, "", "threads", cfg.threads);

    try
    {
        cfg.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error("config: " + name + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("config: cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ScenarioConfig cfg = scenario_from_json_text(text, file.string());
    if (cfg.element_pattern.kind == "tabulated" && !cfg.element_pattern.file.empty())
    {
        std::filesystem::path p(cfg.element_pattern.file);
        if (p.is_relative())
            cfg.element_pattern.file = (file.parent_path() / p).string();
    }
    return cfg;
}

std::string scenario_to_json_text(const ScenarioConfig &config)
{
    json root;
    root["scenario_id"] = config.scenario_id;
    root["frequency"] = {{"f_lower_hz", config.f_lower_hz},
                         {"f_upper_hz", config.f_upper_hz},
                         {"points", config.frequency_points}};
    root["geometry"] = {{"elements", config.elements}, {"radius_m", config.radius_m}};
    json ep = {{"kind", config.element_pattern.kind}};
    if (config.element_pattern.kind == "gaussian-beam")
    {
        ep["hpbw_deg"] = config.element_pattern.hpbw_deg;
        ep["gain_dbi"] = config.element_pattern.gain_dbi;
    }
    if (config.element_pattern.kind == "tabulated")
        ep["file"] = config.element_pattern.file;
    root["element_pattern"] = ep;
    root["rx_gain_dbi"] = config.rx_gain_dbi;
    root["paths"] = json::array();
    for (const auto &p : config.paths)
        root["paths"].push_back({{"azimuth_deg", p.azimuth_deg},
                                 {"delay_ns", p.delay_ns},
                                 {"power_db", p.power_db},
                                 {"phase_deg", p.phase_deg}});
    root["noise"] = {{"enabled", config.noise.enabled},
                     {"floor_db", config.noise.floor_db},
                     {"seed", config.noise.seed}};
    root["beamform"] = {{"window_half_width_deg", config.window_half_width_deg},
                        {"steering_count", config.steering_count}};
    root["detection"] = {{"threshold_db_above_noise", config.detection.threshold_db_above_noise},
                         {"dynamic_range_db", config.detection.dynamic_range_db},
                         {"delay_neighborhood", config.detection.delay_neighborhood},
                         {"angle_neighborhood", config.detection.angle_neighborhood}};
    root["transform"] = {
        {"zero_pad", config.zero_pad},
        {"window", config.spectral_window == SpectralWindow::hann ? "hann" : "rectangular"}};
    root["estimation"] = {{"f_center_hz", config.f_center_hz},
                          {"per_frequency_array_gain", config.per_frequency_array_gain}};
    root["link_distance_m"] = config.link_distance_m;
    root["threads"] = config.threads;
    return root.dump(2);
}

namespace
{

struct PresetLink
{
    const char *name;
    double distance_m;
    bool line_of_sight;
};

constexpr PresetLink preset_links[] = {
    {"los_8m", 8.0, true},      {"los_14m", 14.0, true},    {"los_22m", 22.0, true},
    {"los_30m", 30.0, true},    {"nlos_11p4m", 11.4, false}, {"nlos_17p4m", 17.4, false},
    {"nlos_25p4m", 25.4, false}, {"nlos_33p4m", 33.4, false},
};

ScenarioConfig make_preset(const PresetLink &link)
{
    ScenarioConfig cfg;
    cfg.scenario_id = link.name;
    cfg.element_pattern.kind = "gaussian-beam";
    cfg.element_pattern.hpbw_deg = 40.0;
    cfg.element_pattern.gain_dbi = 13.5;
    cfg.rx_gain_dbi = 5.5;
    cfg.link_distance_m = link.distance_m;

    double tau_ns = link.distance_m / speed_of_light * 1e9;
    double direct_db = -free_space_pathloss_db(link.distance_m, 29e9);

    if (link.line_of_sight)
    {
        // Dominant direct ray plus three wall bounces; corridor walls put
        // the first-order reflections at moderate azimuth offsets and the
        // far-end bounce behind the receiver.
        cfg.paths = {
            {0.0, tau_ns, direct_db, 0.0},
            {33.0, tau_ns + 9.5, direct_db - 8.0, 110.0},
            {-40.5, tau_ns + 14.0, direct_db - 10.5, 245.0},
            {172.5, tau_ns + 61.0, direct_db - 16.0, 30.0},
        };
    }
    else
    {
        // Around-the-corner link: several comparable bounce paths, none
        // dominant, spread wide in azimuth and delay.
        double base_db = direct_db - 8.0;
        cfg.paths = {
            {24.0, tau_ns + 4.0, base_db - 1.0, 75.0},
            {57.0, tau_ns + 11.5, base_db - 3.5, 190.0},
            {-31.5, tau_ns + 19.0, base_db - 2.0, 310.0},
            {108.0, tau_ns + 33.5, base_db - 6.0, 20.0},
            {-127.5, tau_ns + 52.0, base_db - 7.5, 135.0},
            {163.5, tau_ns + 90.0, base_db - 11.0, 280.0},
        };
    }
    return cfg;
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto &link : preset_links)
        names.emplace_back(link.name);
    return names;
}

bool is_preset(const std::string &name)
{
    for (const auto &link : preset_links)
        if (name == link.name)
            return true;
    return false;
}

ScenarioConfig preset(const std::string &name)
{
    for (const auto &link : preset_links)
        if (name == link.name)
            return make_preset(link);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

ScenarioConfig random_corridor_scene(std::uint64_t seed)
{
    ScenarioConfig cfg;
    cfg.scenario_id = "random_corridor_" + std::to_string(seed);
    cfg.element_pattern.kind = "gaussian-beam";
    cfg.element_pattern.hpbw_deg = 40.0;
    cfg.element_pattern.gain_dbi = 0.0;
    cfg.rx_gain_dbi = 0.0;

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // Everything lands on the processing grids: azimuths on the 1.5 deg
    // steering grid, delays on the native delay bins. One pair shares a
    // delay bin at a wide angular separation, every other pair is separated
    // by at least 3 delay bins.
    double bin_ns = 1e9 / (static_cast<double>(cfg.frequency_points) *
                           FrequencyGrid(cfg.f_lower_hz, cfg.f_upper_hz, cfg.frequency_points)
                               .spacing_hz());
    std::size_t n_paths = 4 + static_cast<std::size_t>(rng() % 5); // 4..8

    auto grid_angle = [&](double deg) { return wrap_deg(1.5 * std::round(deg / 1.5)); };

    double base_db = -84.0 - uniform() * 6.0;
    std::vector<PathConfig> paths;

    std::size_t first_bin = 80 + static_cast<std::size_t>(uniform() * 120.0);
    double first_az = grid_angle(uniform() * 360.0 - 180.0);
    paths.push_back({first_az, static_cast<double>(first_bin) * bin_ns, base_db, 0.0});

    // Co-delay partner, 60..180 deg away.
    double partner_az = grid_angle(first_az + 60.0 + uniform() * 120.0);
    paths.push_back({partner_az, static_cast<double>(first_bin) * bin_ns,
                     base_db - uniform() * 6.0, uniform() * 360.0});

    std::size_t bin = first_bin;
    for (std::size_t k = 2; k < n_paths; ++k)
    {
        bin += 3 + static_cast<std::size_t>(uniform() * 40.0);
        paths.push_back({grid_angle(uniform() * 360.0 - 180.0), static_cast<double>(bin) * bin_ns,
                         base_db - uniform() * 12.0, uniform() * 360.0});
    }
    cfg.paths = std::move(paths);
    return cfg;
}

} // namespace vaapl

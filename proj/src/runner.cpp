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

#include "vaapl/runner.hpp"

#include "vaapl/io.hpp"
#include "vaapl/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <stdexcept>

namespace vaapl
{

using nlohmann::json;

std::string fnv1a_hex(const std::string &bytes)
{
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes)
    {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

GainBudget make_gain_budget(const ScenarioConfig &config)
{
    GainBudget budget;
    budget.tx_gain_linear = db_to_linear(config.element_pattern.gain_dbi);
    budget.rx_gain_linear = db_to_linear(config.rx_gain_dbi);

    UcaGeometry geometry = config.geometry();
    AntennaPattern element = config.element();
    double window = config.window_half_width_deg;

    if (config.per_frequency_array_gain)
    {
        FrequencyGrid grid = config.frequency_grid();
        budget.array_gain = [geometry, element, window, grid](double, double azimuth_deg) {
            // RMS of the per-frequency array gain over the sweep.
            double acc = 0.0;
            for (std::size_t i = 0; i < grid.num_points(); ++i)
            {
                double g = array_gain(geometry, element, grid.freq_hz(i), azimuth_deg, window);
                acc += g * g;
            }
            return std::sqrt(acc / static_cast<double>(grid.num_points()));
        };
    }
    else
    {
        budget.array_gain = [geometry, element, window](double freq_hz, double azimuth_deg) {
            return array_gain(geometry, element, freq_hz, azimuth_deg, window);
        };
    }
    return budget;
}

namespace
{

constexpr std::uint64_t dss_seed_salt = 0x9e3779b97f4a7c15ULL;

PathlossEstimate make_free_space_estimate(double distance_m, double f_center_hz)
{
    PathlossEstimate e;
    e.method = EstimationMethod::free_space;
    e.pathloss_db = free_space_pathloss_db(distance_m, f_center_hz);
    e.path_count = 1;
    double lin = db_to_linear(-e.pathloss_db);
    e.contributions.push_back({std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN(), lin, lin});
    return e;
}

PathlossEstimate make_ground_truth_estimate(const PathSet &truth)
{
    PathlossEstimate e;
    e.method = EstimationMethod::ground_truth;
    e.pathloss_db = true_omni_pathloss_db(truth);
    e.path_count = truth.size();
    for (const auto &p : truth)
        e.contributions.push_back({p.azimuth_deg, p.delay_s, p.power_linear(), p.power_linear()});
    return e;
}

double derive_distance_m(const ScenarioConfig &config, const SceneResults &results)
{
    if (config.link_distance_m > 0.0)
        return config.link_distance_m;
    double min_delay = std::numeric_limits<double>::infinity();
    for (const auto &p : results.detected)
        min_delay = std::min(min_delay, p.delay_s);
    if (!std::isfinite(min_delay))
        return 0.0;
    return min_delay * speed_of_light;
}

} // namespace

SceneResults run_scene(const ScenarioConfig &config)
{
    config.validate();
    PathSet truth = config.truth();
    if (truth.empty())
        throw std::runtime_error("run_scene: simulate mode needs at least one path");

    UcaGeometry geometry = config.geometry();
    FrequencyGrid grid = config.frequency_grid();
    AntennaPattern element = config.element();
    std::vector<double> scan_grid = config.steering_grid();

    SceneResults results;
    results.f_center_hz = config.effective_f_center_hz();

    CfrMatrix cfr_vaa = synth_vaa_cfr(truth, geometry, element, grid);
    CfrMatrix cfr_dss = synth_dss_cfr(truth, scan_grid, element, grid);

    // Physical acquisitions carry the antennas' nominal gains; the pattern
    // shapes are already in the synthesis, so only the scalar gains apply
    // here. The estimators divide the same factors back out.
    double amp = db_to_amplitude(config.element_pattern.gain_dbi + config.rx_gain_dbi);
    cfr_vaa.scale(amp);
    cfr_dss.scale(amp);

    if (config.noise.enabled)
    {
        cfr_vaa = add_noise(cfr_vaa, config.noise.floor_db, config.noise.seed);
        cfr_dss = add_noise(cfr_dss, config.noise.floor_db, config.noise.seed ^ dss_seed_salt);
    }

    BeamformConfig bf;
    bf.window_half_width_deg = config.window_half_width_deg;
    bf.steering_angles_deg = scan_grid;
    BeamSpectrum spectrum = beamform_spectrum(cfr_vaa, bf, config.threads);

    PadpOptions padp_options;
    padp_options.zero_pad_factor = config.zero_pad;
    padp_options.window = config.spectral_window;
    padp_options.threads = config.threads;

    results.padp_vaa = compute_padp(spectrum, padp_options);
    results.padp_dss = compute_padp(cfr_dss, padp_options);
    results.detected = detect_paths(*results.padp_vaa, config.detection);

    GainBudget budget = make_gain_budget(config);
    results.summary.push_back(pl_omni_vaa(results.detected, budget, results.f_center_hz));
    results.summary.push_back(
        pl_omni_ref1(*results.padp_dss, budget, config.detection.threshold_db_above_noise));
    results.summary.push_back(pl_omni_ref2(*results.padp_dss, budget, config.detection));

    double distance = derive_distance_m(config, results);
    if (!(distance > 0.0))
    {
        double min_delay = std::numeric_limits<double>::infinity();
        for (const auto &p : truth)
            min_delay = std::min(min_delay, p.delay_s);
        distance = min_delay * speed_of_light;
    }
    if (distance > 0.0)
        results.summary.push_back(make_free_space_estimate(distance, results.f_center_hz));
    results.free_space_distance_m = distance;

    results.summary.push_back(make_ground_truth_estimate(truth));

    results.cfr_vaa = std::move(cfr_vaa);
    results.cfr_dss = std::move(cfr_dss);
    return results;
}

SceneResults run_scene_ingest(const ScenarioConfig &config, const CfrMatrix *vaa,
                              const CfrMatrix *dss)
{
    if (vaa == nullptr && dss == nullptr)
        throw std::runtime_error("run_scene_ingest: need at least one acquisition");

    SceneResults results;
    GainBudget budget = make_gain_budget(config);

    PadpOptions padp_options;
    padp_options.zero_pad_factor = config.zero_pad;
    padp_options.window = config.spectral_window;
    padp_options.threads = config.threads;

    if (vaa != nullptr)
    {
        results.f_center_hz =
            config.f_center_hz > 0.0 ? config.f_center_hz : vaa->grid().center_hz();
        BeamformConfig bf;
        bf.window_half_width_deg = config.window_half_width_deg;
        bf.steering_angles_deg = config.steering_grid();
        BeamSpectrum spectrum = beamform_spectrum(*vaa, bf, config.threads);
        results.padp_vaa = compute_padp(spectrum, padp_options);
        results.detected = detect_paths(*results.padp_vaa, config.detection);
        results.summary.push_back(pl_omni_vaa(results.detected, budget, results.f_center_hz));
    }
    if (dss != nullptr)
    {
        if (results.f_center_hz == 0.0)
            results.f_center_hz =
                config.f_center_hz > 0.0 ? config.f_center_hz : dss->grid().center_hz();
        results.padp_dss = compute_padp(*dss, padp_options);
        results.summary.push_back(
            pl_omni_ref1(*results.padp_dss, budget, config.detection.threshold_db_above_noise));
        results.summary.push_back(pl_omni_ref2(*results.padp_dss, budget, config.detection));
    }

    double distance = derive_distance_m(config, results);
    if (distance > 0.0)
        results.summary.push_back(make_free_space_estimate(distance, results.f_center_hz));
    results.free_space_distance_m = distance;
    return results;
}

namespace
{

struct SweepSet
{
    FrequencyGrid grid;
    std::vector<std::complex<double>> data; // row-major
};

SweepSet read_sweep_directory(const std::filesystem::path &dir, std::size_t expected_count)
{
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("ingest: " + dir.string() + " is not a directory");

    const std::regex name_pattern("angle_([0-9]+)\\.csv");
    std::vector<std::filesystem::path> files(expected_count);
    std::vector<bool> have(expected_count, false);

    for (const auto &entry : std::filesystem::directory_iterator(dir))
    {
        std::smatch match;
        std::string name = entry.path().filename().string();
        if (!std::regex_match(name, match, name_pattern))
            continue;
        std::size_t index = std::stoul(match[1].str());
        if (index >= expected_count)
            throw std::runtime_error("ingest: " + name + ": rotation index " +
                                     std::to_string(index) + " outside 0.." +
                                     std::to_string(expected_count - 1));
        if (have[index])
            throw std::runtime_error("ingest: duplicate rotation index " + std::to_string(index) +
                                     " (" + name + ")");
        have[index] = true;
        files[index] = entry.path();
    }

    std::string missing;
    for (std::size_t i = 0; i < expected_count; ++i)
        if (!have[i])
            missing += (missing.empty() ? "" : ", ") + std::to_string(i);
    if (!missing.empty())
        throw std::runtime_error("ingest: " + dir.string() + ": missing rotation indices " + missing);

    SweepFile first = read_sweep_csv(files[0]);
    std::size_t nf = first.freqs_hz.size();
    if (nf < 2)
        throw std::runtime_error("ingest: " + files[0].string() + ": need at least 2 points");
    FrequencyGrid grid(first.freqs_hz.front(), first.freqs_hz.back(), nf);
    for (std::size_t i = 0; i < nf; ++i)
        if (std::abs(first.freqs_hz[i] - grid.freq_hz(i)) >
            1e-12 * std::abs(grid.freq_hz(i)))
            throw std::runtime_error("ingest: " + files[0].string() +
                                     ": frequency grid is not uniform");

    std::vector<std::complex<double>> data(expected_count * nf);
    std::copy(first.values.begin(), first.values.end(), data.begin());

    for (std::size_t p = 1; p < expected_count; ++p)
    {
        SweepFile sweep = read_sweep_csv(files[p]);
        if (sweep.freqs_hz.size() != nf)
            throw std::runtime_error("ingest: " + files[p].string() + ": expected " +
                                     std::to_string(nf) + " points, got " +
                                     std::to_string(sweep.freqs_hz.size()));
        for (std::size_t i = 0; i < nf; ++i)
            if (std::abs(sweep.freqs_hz[i] - grid.freq_hz(i)) >
                1e-12 * std::abs(grid.freq_hz(i)))
                throw std::runtime_error("ingest: " + files[p].string() +
                                         ": frequency grid differs from " + files[0].string());
        std::copy(sweep.values.begin(), sweep.values.end(),
                  data.begin() + static_cast<std::ptrdiff_t>(p * nf));
    }
    return {grid, std::move(data)};
}

} // namespace

CfrMatrix ingest_vaa_sweeps(const std::filesystem::path &dir, const UcaGeometry &geometry)
{
    SweepSet set = read_sweep_directory(dir, geometry.num_elements());
    return CfrMatrix::vaa(geometry, set.grid, std::move(set.data));
}

CfrMatrix ingest_dss_sweeps(const std::filesystem::path &dir,
                            const std::vector<double> &rotation_angles_deg)
{
    SweepSet set = read_sweep_directory(dir, rotation_angles_deg.size());
    return CfrMatrix::dss(rotation_angles_deg, set.grid, std::move(set.data));
}

namespace
{

std::ofstream open_output(const std::filesystem::path &file)
{
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("run: cannot open output file " + file.string());
    return out;
}

void write_padp_csv(const std::filesystem::path &file, const Padp &padp)
{
    std::ofstream out = open_output(file);
    double peak = padp.max_power();

    out << "delay_ns";
    for (double a : padp.angle_grid_deg())
        out << ',' << format_double(a, "%.10g");
    out << '\n';

    // Cells in dB relative to the global peak, floored at -300 dB.
    for (std::size_t n = 0; n < padp.num_delays(); ++n)
    {
        out << format_double(padp.delay_grid_s()[n] * 1e9, "%.10g");
        for (std::size_t j = 0; j < padp.num_angles(); ++j)
        {
            double v = padp.at(n, j);
            double db = (peak > 0.0 && v > 0.0) ? 10.0 * std::log10(v / peak) : -300.0;
            out << ',' << format_double(std::max(db, -300.0), "%.4f");
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("run: write failed for " + file.string());
}

void write_paths_csv(const std::filesystem::path &file, const std::vector<DetectedPath> &paths)
{
    std::ofstream out = open_output(file);
    out << "rank,azimuth_deg,delay_ns,power_db\n";
    std::size_t rank = 1;
    for (const auto &p : paths)
        out << rank++ << ',' << format_double(p.azimuth_deg, "%.10g") << ','
            << format_double(p.delay_s * 1e9, "%.10g") << ','
            << format_double(linear_to_db(p.power_linear), "%.6f") << '\n';
}

void write_summary_csv(const std::filesystem::path &file, const SceneResults &results,
                       const std::string &scenario_id)
{
    std::ofstream out = open_output(file);
    out << "method,pathloss_db,path_count,scenario_id,f_center_hz\n";
    for (const auto &r : results.summary)
        out << method_name(r.method) << ',' << format_double(r.pathloss_db, "%.10f") << ','
            << r.path_count << ',' << scenario_id << ','
            << format_double(results.f_center_hz, "%.10g") << '\n';
}

void write_diagnostics_csv(const std::filesystem::path &file, const SceneResults &results)
{
    std::ofstream out = open_output(file);
    out << "method,rank,azimuth_deg,delay_ns,power_db,contribution_db\n";
    for (const auto &r : results.summary)
    {
        std::size_t rank = 1;
        for (const auto &c : r.contributions)
        {
            out << method_name(r.method) << ',' << rank++ << ',';
            if (std::isfinite(c.azimuth_deg))
                out << format_double(c.azimuth_deg, "%.10g");
            out << ',';
            if (std::isfinite(c.delay_s))
                out << format_double(c.delay_s * 1e9, "%.10g");
            out << ',' << format_double(linear_to_db(c.raw_power_linear), "%.6f") << ','
                << format_double(linear_to_db(c.normalized_power_linear), "%.6f") << '\n';
        }
    }
}

std::vector<std::string> export_sweeps(const std::filesystem::path &out_dir,
                                       const SceneResults &results)
{
    std::vector<std::string> written;
    auto export_matrix = [&](const CfrMatrix &cfr, const std::string &sub) {
        std::filesystem::path dir = out_dir / "sweeps" / sub;
        std::filesystem::create_directories(dir);
        std::vector<double> freqs(cfr.num_freqs());
        for (std::size_t i = 0; i < cfr.num_freqs(); ++i)
            freqs[i] = cfr.grid().freq_hz(i);
        for (std::size_t p = 0; p < cfr.num_rows(); ++p)
        {
            std::string name = "angle_" + std::to_string(p) + ".csv";
            write_sweep_csv(dir / name, freqs, cfr.row(p).data(), cfr.num_freqs());
            written.push_back("sweeps/" + sub + "/" + name);
        }
    };
    if (results.cfr_vaa)
        export_matrix(*results.cfr_vaa, "vaa");
    if (results.cfr_dss)
        export_matrix(*results.cfr_dss, "dss");
    return written;
}

} // namespace

RunManifest run(const ScenarioConfig &config, const RunOptions &options)
{
    auto t0 = std::chrono::steady_clock::now();

    ScenarioConfig effective = config;
    if (options.seed_override)
        effective.noise.seed = *options.seed_override;
    if (options.zero_pad_override)
        effective.zero_pad = *options.zero_pad_override;
    if (options.threads_override)
        effective.threads = *options.threads_override;
    effective.validate();

    if (options.out_dir.empty())
        throw std::runtime_error("run: output directory required");
    if (std::filesystem::exists(options.out_dir))
    {
        if (!std::filesystem::is_directory(options.out_dir))
            throw std::runtime_error("run: " + options.out_dir.string() + " is not a directory");
        if (!std::filesystem::is_empty(options.out_dir) && !options.force)
            throw std::runtime_error("run: " + options.out_dir.string() +
                                     " is not empty (use force to overwrite)");
    }
    std::filesystem::create_directories(options.out_dir);

    SceneResults results;
    if (options.mode == RunMode::simulate)
    {
        results = run_scene(effective);
    }
    else
    {
        if (options.sweeps_dir.empty())
            throw std::runtime_error("run: ingest mode requires a sweeps directory");
        std::optional<CfrMatrix> vaa, dss;
        std::filesystem::path vaa_dir = options.sweeps_dir / "vaa";
        std::filesystem::path dss_dir = options.sweeps_dir / "dss";
        if (std::filesystem::is_directory(vaa_dir))
            vaa = ingest_vaa_sweeps(vaa_dir, effective.geometry());
        if (std::filesystem::is_directory(dss_dir))
            dss = ingest_dss_sweeps(dss_dir, effective.steering_grid());
        if (!vaa && !dss)
            throw std::runtime_error("run: " + options.sweeps_dir.string() +
                                     " contains neither vaa/ nor dss/ sweep directories");
        results = run_scene_ingest(effective, vaa ? &*vaa : nullptr, dss ? &*dss : nullptr);
    }

    RunManifest manifest;
    manifest.scenario_id = effective.scenario_id;
    manifest.mode = options.mode == RunMode::simulate ? "simulate" : "ingest";
    manifest.tool_version = version_string;
    manifest.parameters_json = scenario_to_json_text(effective);
    manifest.config_hash = fnv1a_hex(manifest.parameters_json);

    if (results.padp_vaa)
    {
        write_padp_csv(options.out_dir / "padp_vaa.csv", *results.padp_vaa);
        manifest.outputs.push_back("padp_vaa.csv");
        write_paths_csv(options.out_dir / "paths_vaa.csv", results.detected);
        manifest.outputs.push_back("paths_vaa.csv");
    }
    if (results.padp_dss)
    {
        write_padp_csv(options.out_dir / "padp_dss.csv", *results.padp_dss);
        manifest.outputs.push_back("padp_dss.csv");
    }
    write_summary_csv(options.out_dir / "summary.csv", results, effective.scenario_id);
    manifest.outputs.push_back("summary.csv");
    write_diagnostics_csv(options.out_dir / "diagnostics.csv", results);
    manifest.outputs.push_back("diagnostics.csv");

    if (options.mode == RunMode::simulate && options.export_sweeps)
        for (auto &name : export_sweeps(options.out_dir, results))
            manifest.outputs.push_back(std::move(name));

    manifest.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json mj;
    mj["scenario_id"] = manifest.scenario_id;
    mj["mode"] = manifest.mode;
    mj["tool_version"] = manifest.tool_version;
    mj["config_hash"] = manifest.config_hash;
    mj["outputs"] = manifest.outputs;
    mj["timing_seconds"] = manifest.timing_seconds;
    mj["parameters"] = json::parse(manifest.parameters_json);
    {
        std::ofstream out = open_output(options.out_dir / "manifest.json");
        out << mj.dump(2) << '\n';
        if (!out)
            throw std::runtime_error("run: write failed for manifest.json");
    }

    for (const auto &name : manifest.outputs)
        if (!std::filesystem::exists(options.out_dir / name))
            throw std::runtime_error("run: declared output missing: " + name);
    return manifest;
}

} // namespace vaapl

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
#include "vaapl/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"Omni-directional pathloss estimation from virtual-antenna-array and "
                 "directional-scan soundings"};
    app.set_version_flag("--version", vaapl::version_string);

    std::string config_arg;
    std::string out_dir;
    std::string mode = "simulate";
    std::string sweeps_dir;
    bool force = false;
    bool export_sweeps = false;
    bool list_presets = false;
    std::uint64_t seed = 0;
    std::size_t zero_pad = 0;
    unsigned threads = 0;

    app.add_option("--config", config_arg, "Scenario config JSON file or preset name");
    app.add_option("--out", out_dir, "Output directory for this run");
    app.add_option("--mode", mode, "simulate | ingest")->check(CLI::IsMember({"simulate", "ingest"}));
    app.add_option("--sweeps", sweeps_dir,
                   "Directory with vaa/ and/or dss/ per-angle sweep files (ingest mode)");
    app.add_flag("--force", force, "Overwrite a non-empty output directory");
    app.add_flag("--export-sweeps", export_sweeps,
                 "Also write the synthesized per-angle sweep files (simulate mode)");
    auto *seed_opt = app.add_option("--seed", seed, "Override the config noise seed");
    auto *pad_opt = app.add_option("--zero-pad", zero_pad, "Override the transform zero-pad factor");
    auto *threads_opt = app.add_option("--threads", threads, "Override the config worker count");
    app.add_flag("--list-presets", list_presets, "List built-in scenario presets and exit");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (list_presets)
        {
            for (const auto &name : vaapl::preset_names())
                std::cout << name << '\n';
            return 0;
        }
        if (config_arg.empty())
            throw std::runtime_error("--config is required (file path or preset name)");
        if (out_dir.empty())
            throw std::runtime_error("--out is required");

        vaapl::ScenarioConfig config = vaapl::is_preset(config_arg)
                                           ? vaapl::preset(config_arg)
                                           : vaapl::load_scenario(config_arg);

        vaapl::RunOptions options;
        options.out_dir = out_dir;
        options.mode = mode == "ingest" ? vaapl::RunMode::ingest : vaapl::RunMode::simulate;
        options.sweeps_dir = sweeps_dir;
        options.force = force;
        options.export_sweeps = export_sweeps;
        if (seed_opt->count() > 0)
            options.seed_override = seed;
        if (pad_opt->count() > 0)
            options.zero_pad_override = zero_pad;
        if (threads_opt->count() > 0)
            options.threads_override = threads;

        vaapl::RunManifest manifest = vaapl::run(config, options);
        std::cout << "run " << manifest.scenario_id << " (" << manifest.mode << ") -> " << out_dir
                  << ": " << manifest.outputs.size() << " outputs, "
                  << manifest.timing_seconds << " s\n";
        return 0;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

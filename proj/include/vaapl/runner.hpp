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

#ifndef VAAPL_RUNNER_HPP
#define VAAPL_RUNNER_HPP

#include "vaapl/estimators.hpp"
#include "vaapl/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vaapl
{

enum class RunMode
{
    simulate,
    ingest
};

struct RunOptions
{
    std::filesystem::path out_dir;
    RunMode mode = RunMode::simulate;
    std::filesystem::path sweeps_dir; // ingest mode: contains vaa/ and/or dss/
    bool force = false;               // overwrite a non-empty output directory
    bool export_sweeps = false;       // simulate mode: also write per-angle sweep files
    std::optional<std::uint64_t> seed_override;
    std::optional<std::size_t> zero_pad_override;
    std::optional<unsigned> threads_override;
};

// Everything one scene produces, kept in memory so callers can compare runs
// at full precision.
struct SceneResults
{
    std::vector<PathlossEstimate> summary;
    std::optional<Padp> padp_vaa;
    std::optional<Padp> padp_dss;
    std::vector<DetectedPath> detected;
    std::optional<CfrMatrix> cfr_vaa;
    std::optional<CfrMatrix> cfr_dss;
    double f_center_hz = 0.0;
    double free_space_distance_m = 0.0;
};

struct RunManifest
{
    std::string scenario_id;
    std::string mode;
    std::string tool_version;
    std::string config_hash;
    std::vector<std::string> outputs; // file names relative to the run directory
    double timing_seconds = 0.0;      // excluded from any determinism contract
    std::string parameters_json;      // effective values actually used
};

// Gain bookkeeping derived from a scenario: nominal tx gain = element pattern
// gain, nominal rx gain = rx_gain_dbi, array gain from the beamformer at the
// center frequency (or averaged per frequency when configured).
GainBudget make_gain_budget(const ScenarioConfig &config);

// Full simulate pipeline, no file output. Runs synth -> beamform -> profile
// -> detect -> estimators for the virtual array and synth -> profile ->
// ref1/ref2 for the directional scan; appends free-space and ground truth.
SceneResults run_scene(const ScenarioConfig &config);

// Same estimators on ingested acquisitions; ground truth is unavailable and
// free space uses the configured distance or the earliest detected path.
SceneResults run_scene_ingest(const ScenarioConfig &config, const CfrMatrix *vaa,
                              const CfrMatrix *dss);

// Assemble a virtual-array acquisition from per-angle sweep files
// angle_<index>.csv, index 0..P-1. Validates completeness, duplicate indices
// and grid consistency across files.
CfrMatrix ingest_vaa_sweeps(const std::filesystem::path &dir, const UcaGeometry &geometry);

// Directional-scan counterpart; expects one file per rotation angle.
CfrMatrix ingest_dss_sweeps(const std::filesystem::path &dir,
                            const std::vector<double> &rotation_angles_deg);

// Batch entry point: run a scene and write the CSV artifacts and manifest
// into options.out_dir. Returns the manifest after verifying that every
// declared output exists.
RunManifest run(const ScenarioConfig &config, const RunOptions &options);

// 64-bit FNV-1a, hex-encoded; used for the manifest's config hash.
std::string fnv1a_hex(const std::string &bytes);

} // namespace vaapl

#endif

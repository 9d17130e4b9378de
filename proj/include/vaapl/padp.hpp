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

#ifndef VAAPL_PADP_HPP
#define VAAPL_PADP_HPP

#include "vaapl/beamform.hpp"
#include "vaapl/channel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vaapl
{

enum class PadpKind
{
    vaa,
    dss
};

enum class SpectralWindow
{
    rectangular,
    hann
};

struct PadpOptions
{
    // Transform length = zero_pad_factor * F; 1 keeps the native delay grid
    // spacing 1/(F * spacing), larger values interpolate the profile.
    std::size_t zero_pad_factor = 1;
    SpectralWindow window = SpectralWindow::rectangular;
    unsigned threads = 1;

    void validate() const;
};

// Power angular delay profile: delay bins x angles, linear power. Power is
// normalized so a single on-grid path of amplitude A seen with array gain G
// peaks at (A*G)^2 regardless of sweep length, padding, or window.
class Padp
{
  public:
    Padp(PadpKind kind, std::vector<double> delay_grid_s, std::vector<double> angle_grid_deg,
         std::vector<double> power);

    PadpKind kind() const { return kind_; }
    const std::vector<double> &delay_grid_s() const { return delay_grid_s_; }
    const std::vector<double> &angle_grid_deg() const { return angle_grid_deg_; }
    std::size_t num_delays() const { return delay_grid_s_.size(); }
    std::size_t num_angles() const { return angle_grid_deg_.size(); }

    double at(std::size_t delay_bin, std::size_t angle) const
    {
        return power_[angle * num_delays() + delay_bin];
    }
    std::span<const double> angle_column(std::size_t angle) const
    {
        return {power_.data() + angle * num_delays(), num_delays()};
    }
    const std::vector<double> &power() const { return power_; }

    double max_power() const;

  private:
    PadpKind kind_;
    std::vector<double> delay_grid_s_;
    std::vector<double> angle_grid_deg_;
    std::vector<double> power_; // angle-major
};

// Inverse discrete Fourier transform of each angle column of the beamformed
// spectrum onto the uniform delay grid n/(N*spacing), n = 0..N-1.
Padp compute_padp(const BeamSpectrum &spectrum, const PadpOptions &options = {});

// Same transform applied per rotation angle of a directional scan.
Padp compute_padp(const CfrMatrix &dss_cfr, const PadpOptions &options = {});

// Max over angle per delay bin. Individual per-angle profiles are the
// columns of the Padp itself.
std::vector<double> aggregate_pdp(const Padp &padp);

// Median power over the last 10% of delay bins across all angles; assumes a
// path-free tail. Requires at least 20 delay bins.
double estimate_noise_floor(const Padp &padp);

struct PeakSearchConfig
{
    double threshold_db_above_noise = 6.0;
    double dynamic_range_db = 25.0;
    int delay_neighborhood = 1;
    int angle_neighborhood = 1;

    void validate() const;
};

// Multipath detection. For virtual-array profiles: delay bins that are strict
// local maxima of the aggregate profile above the noise gate and within the
// dynamic range, then strict local maxima (circular) of the angular cut at
// each such delay. For directional-scan profiles only the delay search runs
// and each detected bin contributes its max-over-angle cell. Results are
// sorted by descending power, ties by (delay, angle).
std::vector<DetectedPath> detect_paths(const Padp &padp, const PeakSearchConfig &config = {});

} // namespace vaapl

#endif

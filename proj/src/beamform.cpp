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

#include "vaapl/beamform.hpp"

#include <cmath>
#include <stdexcept>

namespace vaapl
{

void BeamformConfig::validate() const
{
    if (!(window_half_width_deg > 0.0) || !(window_half_width_deg <= 180.0))
        throw std::invalid_argument("BeamformConfig: window half-width must lie in (0, 180]");
    if (steering_angles_deg.empty())
        return;
    // The steering grid must cover [-180, 180) uniformly.
    std::size_t n = steering_angles_deg.size();
    double step = 360.0 / static_cast<double>(n);
    double start = steering_angles_deg.front();
    if (!(start >= -180.0) || !(start < -180.0 + step))
        throw std::invalid_argument("BeamformConfig: steering grid must start in [-180, -180 + step)");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(steering_angles_deg[i] - (start + static_cast<double>(i) * step)) > 1e-9)
            throw std::invalid_argument("BeamformConfig: steering grid must be uniform over [-180, 180)");
}

std::vector<double> make_steering_grid(std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("make_steering_grid: count must be positive");
    std::vector<double> grid(count);
    double step = 360.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = -180.0 + static_cast<double>(i) * step;
    return grid;
}

BeamSpectrum::BeamSpectrum(FrequencyGrid grid, std::vector<double> angles_deg,
                           std::vector<std::complex<double>> data)
    : grid_(grid), angles_deg_(std::move(angles_deg)), data_(std::move(data))
{
    if (angles_deg_.empty())
        throw std::invalid_argument("BeamSpectrum: no steering angles");
    if (data_.size() != angles_deg_.size() * grid_.num_points())
        throw std::invalid_argument("BeamSpectrum: data size does not match freqs x angles");
}

bool element_in_window(double steer_deg, double element_angle_deg, double window_half_width_deg)
{
    return std::abs(wrap_deg_signed(steer_deg - element_angle_deg)) <= window_half_width_deg;
}

std::complex<double> steering_weight(const UcaGeometry &geometry, double freq_hz, double steer_deg,
                                     std::size_t element_index, double window_half_width_deg)
{
    if (element_index >= geometry.num_elements())
        throw std::invalid_argument("steering_weight: element index out of range");
    double elem_angle = geometry.element_angle_deg(element_index);
    if (!element_in_window(steer_deg, elem_angle, window_half_width_deg))
        return {0.0, 0.0};
    double diff = wrap_deg_signed(steer_deg - elem_angle);
    double m = geometry.radius_m() / speed_of_light * std::cos(deg2rad(diff));
    return cis_turns_product(-freq_hz, m);
}

BeamSpectrum beamform_spectrum(const CfrMatrix &cfr, const BeamformConfig &config, unsigned threads)
{
    if (cfr.source() != CfrMatrix::Source::vaa)
        throw std::invalid_argument(
            "beamform_spectrum: input must be a virtual-array acquisition (element positions "
            "are undefined for a directional scan)");
    config.validate();

    const UcaGeometry &geom = cfr.geometry();
    std::vector<double> angles = config.steering_angles_deg.empty()
                                     ? make_steering_grid(geom.num_elements())
                                     : config.steering_angles_deg;
    double window = config.window_half_width_deg;

    std::size_t nf = cfr.num_freqs();
    const FrequencyGrid &grid = cfr.grid();
    double r_over_c = geom.radius_m() / speed_of_light;

    std::vector<std::complex<double>> data(angles.size() * nf, {0.0, 0.0});

    parallel_for_blocks(angles.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j)
        {
            std::complex<double> *column = data.data() + j * nf;
            for (std::size_t p = 0; p < geom.num_elements(); ++p)
            {
                double elem_angle = geom.element_angle_deg(p);
                if (!element_in_window(angles[j], elem_angle, window))
                    continue;
                double diff = wrap_deg_signed(angles[j] - elem_angle);
                double m = r_over_c * std::cos(deg2rad(diff));
                PhasorSequence weight(-m, grid.f_lower_hz(), grid.spacing_hz());
                std::span<const std::complex<double>> row = cfr.row(p);
                for (std::size_t i = 0; i < nf; ++i)
                    column[i] += weight.next() * row[i];
            }
        }
    });

    return BeamSpectrum(grid, std::move(angles), std::move(data));
}

std::vector<std::complex<double>> array_beam_pattern(const UcaGeometry &geometry,
                                                     const AntennaPattern &element, double freq_hz,
                                                     double path_azimuth_deg,
                                                     std::span<const double> steer_grid_deg,
                                                     double window_half_width_deg)
{
    std::vector<std::complex<double>> pattern(steer_grid_deg.size(), {0.0, 0.0});
    double r_over_c = geometry.radius_m() / speed_of_light;

    for (std::size_t j = 0; j < steer_grid_deg.size(); ++j)
    {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t p = 0; p < geometry.num_elements(); ++p)
        {
            double elem_angle = geometry.element_angle_deg(p);
            if (!element_in_window(steer_grid_deg[j], elem_angle, window_half_width_deg))
                continue;
            double path_diff = wrap_deg_signed(path_azimuth_deg - elem_angle);
            double m_path = r_over_c * std::cos(deg2rad(path_diff));
            std::complex<double> transfer =
                cis_turns_product(freq_hz, m_path) * element.eval(freq_hz, path_diff);

            double steer_diff = wrap_deg_signed(steer_grid_deg[j] - elem_angle);
            double m_steer = r_over_c * std::cos(deg2rad(steer_diff));
            acc += transfer * cis_turns_product(-freq_hz, m_steer);
        }
        pattern[j] = acc;
    }
    return pattern;
}

double array_gain(const UcaGeometry &geometry, const AntennaPattern &element, double freq_hz,
                  double path_azimuth_deg, double window_half_width_deg)
{
    double steer[1] = {path_azimuth_deg};
    auto pattern = array_beam_pattern(geometry, element, freq_hz, path_azimuth_deg,
                                      std::span<const double>(steer, 1), window_half_width_deg);
    return std::abs(pattern.front());
}

} // namespace vaapl

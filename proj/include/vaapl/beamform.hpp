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

#ifndef VAAPL_BEAMFORM_HPP
#define VAAPL_BEAMFORM_HPP

#include "vaapl/channel.hpp"

#include <complex>
#include <span>
#include <vector>

namespace vaapl
{

// Windowed classical beamformer settings. The window keeps only elements
// whose wrapped angular distance to the steering direction is at most
// window_half_width_deg (boundary included); 90 deg keeps the half circle
// facing the steered direction.
struct BeamformConfig
{
    double window_half_width_deg = 90.0;
    std::vector<double> steering_angles_deg; // empty: one angle per array element

    void validate() const;
};

// Uniform steering grid of `count` angles covering [-180, 180).
std::vector<double> make_steering_grid(std::size_t count);

// Beamformed spectrum Q(f, phi): frequencies x steering angles. Each angle's
// spectrum is stored contiguously.
class BeamSpectrum
{
  public:
    BeamSpectrum(FrequencyGrid grid, std::vector<double> angles_deg,
                 std::vector<std::complex<double>> data);

    const FrequencyGrid &grid() const { return grid_; }
    const std::vector<double> &angles_deg() const { return angles_deg_; }
    std::size_t num_freqs() const { return grid_.num_points(); }
    std::size_t num_angles() const { return angles_deg_.size(); }

    std::complex<double> at(std::size_t f, std::size_t angle) const
    {
        return data_[angle * num_freqs() + f];
    }
    std::span<const std::complex<double>> angle_column(std::size_t angle) const
    {
        return {data_.data() + angle * num_freqs(), num_freqs()};
    }
    const std::vector<std::complex<double>> &data() const { return data_; }

  private:
    FrequencyGrid grid_;
    std::vector<double> angles_deg_;
    std::vector<std::complex<double>> data_;
};

// True when element index p participates in the beam steered to steer_deg.
bool element_in_window(double steer_deg, double element_angle_deg, double window_half_width_deg);

// Steering weight of element p: exp(-j 2 pi f r cos(steer - elem_p) / c)
// inside the window, exactly zero outside. This is the conjugate of the
// phase-center term of the element transfer function, so steering at a path's
// direction sums the element patterns coherently.
std::complex<double> steering_weight(const UcaGeometry &geometry, double freq_hz, double steer_deg,
                                     std::size_t element_index, double window_half_width_deg);

// Q(f, phi) = sum_p w_p(f, phi) H_p(f) over the in-window elements, in fixed
// element order. Angle columns are independent; `threads` only splits them.
BeamSpectrum beamform_spectrum(const CfrMatrix &cfr, const BeamformConfig &config,
                               unsigned threads = 1);

// Response of the beamformer across steer_grid to a unit path from
// path_azimuth_deg; the value at the path's own direction is the array gain.
std::vector<std::complex<double>> array_beam_pattern(const UcaGeometry &geometry,
                                                     const AntennaPattern &element, double freq_hz,
                                                     double path_azimuth_deg,
                                                     std::span<const double> steer_grid_deg,
                                                     double window_half_width_deg);

// |array beam pattern| at the steered direction itself.
double array_gain(const UcaGeometry &geometry, const AntennaPattern &element, double freq_hz,
                  double path_azimuth_deg, double window_half_width_deg);

} // namespace vaapl

#endif

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

#ifndef VAAPL_CHANNEL_HPP
#define VAAPL_CHANNEL_HPP

#include "vaapl/common.hpp"
#include "vaapl/pattern.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vaapl
{

// Uniform circular array: element p (0-based) sits at azimuth 360*p/P deg on
// a circle of radius r.
class UcaGeometry
{
  public:
    UcaGeometry(std::size_t num_elements, double radius_m);

    std::size_t num_elements() const { return num_elements_; }
    double radius_m() const { return radius_m_; }

    double element_angle_deg(std::size_t p) const
    {
        return 360.0 * static_cast<double>(p) / static_cast<double>(num_elements_);
    }

    std::vector<double> element_angles_deg() const;

  private:
    std::size_t num_elements_;
    double radius_m_;
};

// Uniform frequency sweep grid [f_lower, f_upper] with num_points samples.
class FrequencyGrid
{
  public:
    FrequencyGrid(double f_lower_hz, double f_upper_hz, std::size_t num_points);

    double f_lower_hz() const { return f_lower_hz_; }
    double f_upper_hz() const { return f_upper_hz_; }
    std::size_t num_points() const { return num_points_; }

    double spacing_hz() const
    {
        return (f_upper_hz_ - f_lower_hz_) / static_cast<double>(num_points_ - 1);
    }
    double freq_hz(std::size_t i) const { return f_lower_hz_ + static_cast<double>(i) * spacing_hz(); }
    double center_hz() const { return 0.5 * (f_lower_hz_ + f_upper_hz_); }

    // Largest delay representable without aliasing, 1/spacing.
    double unambiguous_delay_s() const { return 1.0 / spacing_hz(); }

    bool operator==(const FrequencyGrid &other) const = default;

  private:
    double f_lower_hz_, f_upper_hz_;
    std::size_t num_points_;
};

// Ground-truth propagation path. Azimuths are stored wrapped to [-180, 180).
struct Path
{
    Path(double azimuth, double delay, std::complex<double> amp);

    double azimuth_deg;
    double delay_s;
    std::complex<double> amplitude;

    double power_linear() const { return std::norm(amplitude); }
};

using PathSet = std::vector<Path>;

// Path detected from a power angular delay profile: power instead of a
// complex amplitude.
struct DetectedPath
{
    double azimuth_deg = 0.0;
    double delay_s = 0.0;
    double power_linear = 0.0;
};

// P x F complex channel frequency responses. Row p is one array element
// (virtual-array acquisition) or one rotation angle (directional scan).
// Rows are stored contiguously over frequency.
class CfrMatrix
{
  public:
    enum class Source
    {
        vaa,
        dss
    };

    static CfrMatrix vaa(UcaGeometry geometry, FrequencyGrid grid,
                         std::vector<std::complex<double>> data);
    static CfrMatrix dss(std::vector<double> rotation_angles_deg, FrequencyGrid grid,
                         std::vector<std::complex<double>> data);

    Source source() const { return source_; }
    const FrequencyGrid &grid() const { return grid_; }
    std::size_t num_rows() const { return num_rows_; }
    std::size_t num_freqs() const { return grid_.num_points(); }

    const UcaGeometry &geometry() const;
    const std::vector<double> &rotation_angles_deg() const;

    // Azimuth of row p: element position (vaa) or rotation angle (dss).
    double row_angle_deg(std::size_t p) const;

    std::complex<double> at(std::size_t row, std::size_t f) const
    {
        return data_[row * num_freqs() + f];
    }
    std::span<const std::complex<double>> row(std::size_t p) const
    {
        return {data_.data() + p * num_freqs(), num_freqs()};
    }
    std::span<std::complex<double>> row(std::size_t p)
    {
        return {data_.data() + p * num_freqs(), num_freqs()};
    }
    const std::vector<std::complex<double>> &data() const { return data_; }

    // Multiply every entry by a scalar (used to fold antenna gain factors
    // into synthesized acquisitions).
    void scale(std::complex<double> factor);

  private:
    CfrMatrix(Source source, FrequencyGrid grid, std::size_t rows,
              std::vector<std::complex<double>> data);

    Source source_;
    FrequencyGrid grid_;
    std::size_t num_rows_;
    std::vector<UcaGeometry> geometry_;        // one element when source == vaa
    std::vector<double> rotation_angles_deg_;  // filled when source == dss
    std::vector<std::complex<double>> data_;
};

// Virtual-array acquisition: element p sees path k through the phase-center
// offset exp(j 2 pi f r cos(az_k - elem_p) / c) and the element pattern
// g(f, az_k - elem_p), on top of the delay phasor exp(-j 2 pi f tau_k).
// Delays at or beyond the unambiguous range 1/spacing are rejected.
CfrMatrix synth_vaa_cfr(const PathSet &truth, const UcaGeometry &geometry,
                        const AntennaPattern &element, const FrequencyGrid &grid);

// Directional-scan acquisition: the antenna stays at the rotation center, so
// there is no phase-center offset, only the rotated pattern.
CfrMatrix synth_dss_cfr(const PathSet &truth, const std::vector<double> &rotation_angles_deg,
                        const AntennaPattern &element, const FrequencyGrid &grid);

// Adds circularly-symmetric complex Gaussian noise, i.i.d. per (row, freq)
// sample, with total power 10^(noise_power_db/10) per sample. Deterministic
// for a fixed seed; -inf disables the noise entirely.
CfrMatrix add_noise(const CfrMatrix &cfr, double noise_power_db, std::uint64_t seed);

// Friis free-space loss 20 log10(4 pi d f / c) in dB.
double free_space_pathloss_db(double distance_m, double freq_hz);

// Reference pathloss of a ground-truth path set with unit antenna gains:
// -10 log10(sum_k |amplitude_k|^2).
double true_omni_pathloss_db(const PathSet &truth);

} // namespace vaapl

#endif

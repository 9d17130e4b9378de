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

#include "vaapl/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace vaapl
{

UcaGeometry::UcaGeometry(std::size_t num_elements, double radius_m)
    : num_elements_(num_elements), radius_m_(radius_m)
{
    if (num_elements_ < 3)
        throw std::invalid_argument("UcaGeometry: need at least 3 elements");
    if (!(radius_m_ > 0.0) || !std::isfinite(radius_m_))
        throw std::invalid_argument("UcaGeometry: radius must be positive and finite");
}

std::vector<double> UcaGeometry::element_angles_deg() const
{
    std::vector<double> angles(num_elements_);
    for (std::size_t p = 0; p < num_elements_; ++p)
        angles[p] = element_angle_deg(p);
    return angles;
}

FrequencyGrid::FrequencyGrid(double f_lower_hz, double f_upper_hz, std::size_t num_points)
    : f_lower_hz_(f_lower_hz), f_upper_hz_(f_upper_hz), num_points_(num_points)
{
    if (!(f_lower_hz_ > 0.0) || !std::isfinite(f_lower_hz_))
        throw std::invalid_argument("FrequencyGrid: f_lower must be positive and finite");
    if (!(f_upper_hz_ > f_lower_hz_) || !std::isfinite(f_upper_hz_))
        throw std::invalid_argument("FrequencyGrid: f_upper must exceed f_lower");
    if (num_points_ < 2)
        throw std::invalid_argument("FrequencyGrid: need at least 2 points");
}

Path::Path(double azimuth, double delay, std::complex<double> amp)
    : azimuth_deg(wrap_deg(azimuth)), delay_s(delay), amplitude(amp)
{
    if (!std::isfinite(azimuth))
        throw std::invalid_argument("Path: azimuth must be finite");
    if (!(delay_s >= 0.0) || !std::isfinite(delay_s))
        throw std::invalid_argument("Path: delay must be non-negative and finite");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw std::invalid_argument("Path: amplitude must be finite");
}

CfrMatrix::CfrMatrix(Source source, FrequencyGrid grid, std::size_t rows,
                     std::vector<std::complex<double>> data)
    : source_(source), grid_(grid), num_rows_(rows), data_(std::move(data))
{
    if (num_rows_ == 0)
        throw std::invalid_argument("CfrMatrix: no rows");
    if (data_.size() != num_rows_ * grid_.num_points())
        throw std::invalid_argument("CfrMatrix: data size does not match rows x freqs");
    for (const auto &v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("CfrMatrix: non-finite entry");
}

CfrMatrix CfrMatrix::vaa(UcaGeometry geometry, FrequencyGrid grid,
                         std::vector<std::complex<double>> data)
{
    CfrMatrix m(Source::vaa, grid, geometry.num_elements(), std::move(data));
    m.geometry_.push_back(geometry);
    return m;
}

CfrMatrix CfrMatrix::dss(std::vector<double> rotation_angles_deg, FrequencyGrid grid,
                         std::vector<std::complex<double>> data)
{
    if (rotation_angles_deg.empty())
        throw std::invalid_argument("CfrMatrix: no rotation angles");
    CfrMatrix m(Source::dss, grid, rotation_angles_deg.size(), std::move(data));
    m.rotation_angles_deg_ = std::move(rotation_angles_deg);
    return m;
}

const UcaGeometry &CfrMatrix::geometry() const
{
    if (source_ != Source::vaa)
        throw std::logic_error("CfrMatrix: geometry only defined for virtual-array acquisitions");
    return geometry_.front();
}

const std::vector<double> &CfrMatrix::rotation_angles_deg() const
{
    if (source_ != Source::dss)
        throw std::logic_error("CfrMatrix: rotation angles only defined for scan acquisitions");
    return rotation_angles_deg_;
}

double CfrMatrix::row_angle_deg(std::size_t p) const
{
    return source_ == Source::vaa ? geometry_.front().element_angle_deg(p)
                                  : rotation_angles_deg_[p];
}

void CfrMatrix::scale(std::complex<double> factor)
{
    for (auto &v : data_)
        v *= factor;
}

namespace
{

void check_delays(const PathSet &truth, const FrequencyGrid &grid)
{
    double max_delay = grid.unambiguous_delay_s();
    for (const auto &path : truth)
        if (!(path.delay_s < max_delay))
            throw std::invalid_argument(
                "synth: path delay " + std::to_string(path.delay_s * 1e9) +
                " ns meets or exceeds the unambiguous range " + std::to_string(max_delay * 1e9) +
                " ns (aliasing)");
}

// Accumulate alpha_k * exp(j 2 pi f (m_k - tau_k)) * g_k(f) over the sweep
// for one (row, path) pair. m is the phase-center advance in seconds.
void accumulate_path(std::complex<double> *row, const FrequencyGrid &grid,
                     const AntennaPattern &element, double angle_diff_deg,
                     std::complex<double> amplitude, double delay_s, double phase_center_s)
{
    std::size_t nf = grid.num_points();
    PhasorSequence phasor(phase_center_s - delay_s, grid.f_lower_hz(), grid.spacing_hz());
    if (element.frequency_dependent())
    {
        for (std::size_t i = 0; i < nf; ++i)
            row[i] += amplitude * phasor.next() * element.eval(grid.freq_hz(i), angle_diff_deg);
    }
    else
    {
        std::complex<double> g = element.eval(grid.center_hz(), angle_diff_deg);
        std::complex<double> coeff = amplitude * g;
        for (std::size_t i = 0; i < nf; ++i)
            row[i] += coeff * phasor.next();
    }
}

} // namespace

CfrMatrix synth_vaa_cfr(const PathSet &truth, const UcaGeometry &geometry,
                        const AntennaPattern &element, const FrequencyGrid &grid)
{
    check_delays(truth, grid);
    std::size_t nf = grid.num_points();
    std::vector<std::complex<double>> data(geometry.num_elements() * nf, {0.0, 0.0});

    double r_over_c = geometry.radius_m() / speed_of_light;
    for (std::size_t p = 0; p < geometry.num_elements(); ++p)
    {
        double elem_angle = geometry.element_angle_deg(p);
        std::complex<double> *row = data.data() + p * nf;
        for (const auto &path : truth)
        {
            double diff = wrap_deg_signed(path.azimuth_deg - elem_angle);
            double phase_center_s = r_over_c * std::cos(deg2rad(diff));
            accumulate_path(row, grid, element, diff, path.amplitude, path.delay_s, phase_center_s);
        }
    }
    return CfrMatrix::vaa(geometry, grid, std::move(data));
}

CfrMatrix synth_dss_cfr(const PathSet &truth, const std::vector<double> &rotation_angles_deg,
                        const AntennaPattern &element, const FrequencyGrid &grid)
{
    if (rotation_angles_deg.empty())
        throw std::invalid_argument("synth_dss_cfr: no rotation angles");
    check_delays(truth, grid);
    std::size_t nf = grid.num_points();
    std::vector<std::complex<double>> data(rotation_angles_deg.size() * nf, {0.0, 0.0});

    for (std::size_t m = 0; m < rotation_angles_deg.size(); ++m)
    {
        std::complex<double> *row = data.data() + m * nf;
        for (const auto &path : truth)
        {
            double diff = wrap_deg_signed(path.azimuth_deg - rotation_angles_deg[m]);
            accumulate_path(row, grid, element, diff, path.amplitude, path.delay_s, 0.0);
        }
    }
    return CfrMatrix::dss(rotation_angles_deg, grid, std::move(data));
}

CfrMatrix add_noise(const CfrMatrix &cfr, double noise_power_db, std::uint64_t seed)
{
    if (noise_power_db == -std::numeric_limits<double>::infinity())
        return cfr;
    if (!std::isfinite(noise_power_db))
        throw std::invalid_argument("add_noise: noise power must be finite or -inf");

    double sigma2 = db_to_linear(noise_power_db);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // (0, 1], 53-bit resolution; avoids log(0) below.
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };

    std::vector<std::complex<double>> data = cfr.data();
    for (auto &v : data)
    {
        // Rayleigh amplitude + uniform phase = circularly-symmetric Gaussian
        // with E|n|^2 = sigma2.
        double mag = std::sqrt(-sigma2 * std::log(uniform()));
        double phase = 2.0 * pi * uniform();
        v += std::polar(mag, phase);
    }

    if (cfr.source() == CfrMatrix::Source::vaa)
        return CfrMatrix::vaa(cfr.geometry(), cfr.grid(), std::move(data));
    return CfrMatrix::dss(cfr.rotation_angles_deg(), cfr.grid(), std::move(data));
}

double free_space_pathloss_db(double distance_m, double freq_hz)
{
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("free_space_pathloss_db: distance must be positive");
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw std::invalid_argument("free_space_pathloss_db: frequency must be positive");
    return 20.0 * std::log10(4.0 * pi * distance_m * freq_hz / speed_of_light);
}

double true_omni_pathloss_db(const PathSet &truth)
{
    if (truth.empty())
        throw std::invalid_argument("true_omni_pathloss_db: empty path set");
    double total = 0.0;
    for (const auto &path : truth)
        total += path.power_linear();
    return -linear_to_db(total);
}

} // namespace vaapl

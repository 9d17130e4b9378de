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

#include "vaapl/padp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vaapl
{

void PadpOptions::validate() const
{
    if (zero_pad_factor < 1)
        throw std::invalid_argument("PadpOptions: zero_pad_factor must be at least 1");
}

void PeakSearchConfig::validate() const
{
    if (!(threshold_db_above_noise > 0.0))
        throw std::invalid_argument("PeakSearchConfig: threshold must be positive");
    if (!(dynamic_range_db > 0.0))
        throw std::invalid_argument("PeakSearchConfig: dynamic range must be positive");
    if (delay_neighborhood < 1 || angle_neighborhood < 1)
        throw std::invalid_argument("PeakSearchConfig: neighborhoods must be positive");
}

Padp::Padp(PadpKind kind, std::vector<double> delay_grid_s, std::vector<double> angle_grid_deg,
           std::vector<double> power)
    : kind_(kind), delay_grid_s_(std::move(delay_grid_s)), angle_grid_deg_(std::move(angle_grid_deg)),
      power_(std::move(power))
{
    if (delay_grid_s_.empty() || angle_grid_deg_.empty())
        throw std::invalid_argument("Padp: empty grid");
    if (power_.size() != delay_grid_s_.size() * angle_grid_deg_.size())
        throw std::invalid_argument("Padp: power size does not match grids");
    for (std::size_t i = 1; i < delay_grid_s_.size(); ++i)
        if (!(delay_grid_s_[i] > delay_grid_s_[i - 1]))
            throw std::invalid_argument("Padp: delay grid not strictly increasing");
    for (double v : power_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Padp: power must be finite and non-negative");
}

double Padp::max_power() const
{
    double m = 0.0;
    for (double v : power_)
        m = std::max(m, v);
    return m;
}

namespace
{

std::vector<double> window_weights(SpectralWindow window, std::size_t nf)
{
    std::vector<double> w(nf, 1.0);
    if (window == SpectralWindow::hann && nf > 1)
        for (std::size_t m = 0; m < nf; ++m)
            w[m] = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(m) /
                                         static_cast<double>(nf - 1)));
    return w;
}

// Shared implementation: inverse DFT per angle column with the coherent-peak
// normalization (sum of window weights)^2.
Padp transform_columns(PadpKind kind, const FrequencyGrid &grid, std::size_t num_angles,
                       std::vector<double> angle_grid,
                       const std::vector<std::complex<double>> &columns, const PadpOptions &options)
{
    options.validate();
    std::size_t nf = grid.num_points();
    std::size_t n = nf * options.zero_pad_factor;

    for (const auto &v : columns)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("compute_padp: non-finite input");

    std::vector<double> weights = window_weights(options.window, nf);
    double wsum = 0.0;
    for (double w : weights)
        wsum += w;
    double norm = wsum * wsum;

    std::vector<double> delay_grid(n);
    double dt = 1.0 / (static_cast<double>(n) * grid.spacing_hz());
    for (std::size_t i = 0; i < n; ++i)
        delay_grid[i] = static_cast<double>(i) * dt;

    std::vector<double> power(num_angles * n, 0.0);

    // One ESTIMATE plan reused across columns; fftw_execute_dft on private
    // buffers is the documented thread-safe entry point.
    std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                      reinterpret_cast<fftw_complex *>(scratch_in.data()),
                                      reinterpret_cast<fftw_complex *>(scratch_out.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr)
        throw std::runtime_error("compute_padp: FFTW plan creation failed");

    parallel_for_blocks(num_angles, options.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::complex<double>> in(n, {0.0, 0.0}), out(n);
        for (std::size_t j = begin; j < end; ++j)
        {
            const std::complex<double> *column = columns.data() + j * nf;
            for (std::size_t m = 0; m < nf; ++m)
                in[m] = column[m] * weights[m];
            std::fill(in.begin() + static_cast<std::ptrdiff_t>(nf), in.end(),
                      std::complex<double>{0.0, 0.0});
            fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(in.data()),
                             reinterpret_cast<fftw_complex *>(out.data()));
            double *dst = power.data() + j * n;
            for (std::size_t i = 0; i < n; ++i)
                dst[i] = std::norm(out[i]) / norm;
        }
    });

    fftw_destroy_plan(plan);
    return Padp(kind, std::move(delay_grid), std::move(angle_grid), std::move(power));
}

std::size_t tail_length(std::size_t num_delays) { return num_delays / 10; }

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Strict local maximum test along the delay axis (array boundaries compare
// only against in-range neighbors).
bool is_delay_local_max(const std::vector<double> &pdp, std::size_t n, int neighborhood)
{
    for (int d = 1; d <= neighborhood; ++d)
    {
        if (n >= static_cast<std::size_t>(d) && !(pdp[n] > pdp[n - static_cast<std::size_t>(d)]))
            return false;
        std::size_t up = n + static_cast<std::size_t>(d);
        if (up < pdp.size() && !(pdp[n] > pdp[up]))
            return false;
    }
    return true;
}

} // namespace

Padp compute_padp(const BeamSpectrum &spectrum, const PadpOptions &options)
{
    return transform_columns(PadpKind::vaa, spectrum.grid(), spectrum.num_angles(),
                             spectrum.angles_deg(), spectrum.data(), options);
}

Padp compute_padp(const CfrMatrix &dss_cfr, const PadpOptions &options)
{
    if (dss_cfr.source() != CfrMatrix::Source::dss)
        throw std::invalid_argument(
            "compute_padp: raw CFR input must be a directional scan; beamform virtual-array "
            "acquisitions first");
    return transform_columns(PadpKind::dss, dss_cfr.grid(), dss_cfr.num_rows(),
                             dss_cfr.rotation_angles_deg(), dss_cfr.data(), options);
}

std::vector<double> aggregate_pdp(const Padp &padp)
{
    std::size_t nd = padp.num_delays();
    std::vector<double> pdp(nd, 0.0);
    for (std::size_t j = 0; j < padp.num_angles(); ++j)
    {
        std::span<const double> column = padp.angle_column(j);
        for (std::size_t n = 0; n < nd; ++n)
            pdp[n] = std::max(pdp[n], column[n]);
    }
    return pdp;
}

double estimate_noise_floor(const Padp &padp)
{
    std::size_t nd = padp.num_delays();
    if (nd < 20)
        throw std::invalid_argument("estimate_noise_floor: need at least 20 delay bins");
    std::size_t tail = tail_length(nd);
    std::vector<double> values;
    values.reserve(tail * padp.num_angles());
    for (std::size_t j = 0; j < padp.num_angles(); ++j)
    {
        std::span<const double> column = padp.angle_column(j);
        for (std::size_t n = nd - tail; n < nd; ++n)
            values.push_back(column[n]);
    }
    return median(std::move(values));
}

std::vector<DetectedPath> detect_paths(const Padp &padp, const PeakSearchConfig &config)
{
    config.validate();
    std::size_t nd = padp.num_delays();
    std::size_t na = padp.num_angles();
    if (nd < 20)
        throw std::invalid_argument("detect_paths: need at least 20 delay bins");

    std::vector<double> pdp = aggregate_pdp(padp);

    // The delay gate compares against the aggregate profile's own tail; the
    // per-cell gate uses the cell-level floor. Both thresholds are relative,
    // so a noiseless profile passes every real peak.
    std::size_t tail = tail_length(nd);
    double floor_aggregate =
        median(std::vector<double>(pdp.end() - static_cast<std::ptrdiff_t>(tail), pdp.end()));
    double floor_cells = estimate_noise_floor(padp);
    double threshold = db_to_linear(config.threshold_db_above_noise);
    double range_min = padp.max_power() * db_to_linear(-config.dynamic_range_db);

    std::vector<DetectedPath> detected;
    for (std::size_t n = 0; n < nd; ++n)
    {
        if (!(pdp[n] > floor_aggregate * threshold) || !(pdp[n] > 0.0))
            continue;
        if (pdp[n] < range_min)
            continue;
        if (!is_delay_local_max(pdp, n, config.delay_neighborhood))
            continue;

        if (padp.kind() == PadpKind::dss)
        {
            // Delay-only mode: the scan's angular response is too wide for a
            // meaningful angular peak search; keep the strongest cell.
            std::size_t best = 0;
            for (std::size_t j = 1; j < na; ++j)
                if (padp.at(n, j) > padp.at(n, best))
                    best = j;
            detected.push_back({wrap_deg(padp.angle_grid_deg()[best]), padp.delay_grid_s()[n],
                                padp.at(n, best)});
            continue;
        }

        for (std::size_t j = 0; j < na; ++j)
        {
            double cell = padp.at(n, j);
            if (!(cell > floor_cells * threshold) || !(cell > 0.0) || cell < range_min)
                continue;
            bool is_max = true;
            for (int d = 1; d <= config.angle_neighborhood && is_max; ++d)
            {
                std::size_t left = (j + na - static_cast<std::size_t>(d) % na) % na;
                std::size_t right = (j + static_cast<std::size_t>(d)) % na;
                if (!(cell > padp.at(n, left)) || !(cell > padp.at(n, right)))
                    is_max = false;
            }
            if (is_max)
                detected.push_back({wrap_deg(padp.angle_grid_deg()[j]), padp.delay_grid_s()[n], cell});
        }
    }

    std::sort(detected.begin(), detected.end(), [](const DetectedPath &a, const DetectedPath &b) {
        if (a.power_linear != b.power_linear)
            return a.power_linear > b.power_linear;
        if (a.delay_s != b.delay_s)
            return a.delay_s < b.delay_s;
        return a.azimuth_deg < b.azimuth_deg;
    });
    return detected;
}

} // namespace vaapl

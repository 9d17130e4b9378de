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

#include "vaapl/pattern.hpp"

#include "vaapl/common.hpp"
#include "vaapl/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vaapl
{

AntennaPattern AntennaPattern::isotropic()
{
    AntennaPattern p;
    p.kind_ = PatternKind::isotropic;
    p.gain_dbi_ = 0.0;
    return p;
}

AntennaPattern AntennaPattern::gaussian(double hpbw_deg, double gain_dbi)
{
    if (!(hpbw_deg > 0.0) || !(hpbw_deg < 360.0))
        throw std::invalid_argument("gaussian pattern: hpbw_deg must lie in (0, 360)");
    if (!std::isfinite(gain_dbi))
        throw std::invalid_argument("gaussian pattern: gain_dbi must be finite");
    AntennaPattern p;
    p.kind_ = PatternKind::gaussian_beam;
    p.hpbw_deg_ = hpbw_deg;
    p.gain_dbi_ = gain_dbi;
    return p;
}

AntennaPattern AntennaPattern::tabulated(std::vector<PatternSample> samples, double base_gain_dbi)
{
    if (samples.empty())
        throw std::invalid_argument("tabulated pattern: no samples");
    if (!std::isfinite(base_gain_dbi))
        throw std::invalid_argument("tabulated pattern: gain_dbi must be finite");

    AntennaPattern p;
    p.kind_ = PatternKind::tabulated;

    // Split rows into frequency blocks (consecutive rows sharing freq_hz).
    std::vector<FreqBlock> blocks;
    for (const auto &s : samples)
    {
        if (!std::isfinite(s.angle_deg) || !std::isfinite(s.freq_hz) || !std::isfinite(s.mag_db) ||
            !std::isfinite(s.phase_deg))
            throw std::invalid_argument("tabulated pattern: non-finite sample");
        if (blocks.empty() || blocks.back().freq_hz != s.freq_hz)
        {
            blocks.push_back(FreqBlock{});
            blocks.back().freq_hz = s.freq_hz;
        }
        FreqBlock &b = blocks.back();
        if (!b.angles_deg.empty() && !(s.angle_deg > b.angles_deg.back()))
            throw std::invalid_argument("tabulated pattern: angle grid not strictly increasing");
        b.angles_deg.push_back(s.angle_deg);
        b.mags_db.push_back(s.mag_db);
        b.phases_deg.push_back(s.phase_deg);
    }

    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks[i].freq_hz == blocks[j].freq_hz)
                throw std::invalid_argument("tabulated pattern: duplicate frequency block");

    for (auto &b : blocks)
    {
        if (b.angles_deg.size() < 2)
            throw std::invalid_argument("tabulated pattern: need at least 2 distinct angles per frequency");
        if (b.angles_deg.back() - b.angles_deg.front() >= 360.0)
            throw std::invalid_argument("tabulated pattern: angle grid spans 360 deg or more");

        // Unwrap phase so linear interpolation never crosses a 360 jump.
        for (std::size_t i = 1; i < b.phases_deg.size(); ++i)
        {
            double d = b.phases_deg[i] - b.phases_deg[i - 1];
            d -= 360.0 * std::nearbyint(d / 360.0);
            b.phases_deg[i] = b.phases_deg[i - 1] + d;
        }

        // Renormalize to a 0 dB peak.
        double peak = *std::max_element(b.mags_db.begin(), b.mags_db.end());
        for (auto &m : b.mags_db)
            m -= peak;

        // Close the circle: virtual sample at first angle + 360 with the
        // first sample's magnitude and phase continued past the seam.
        double seam_phase = b.phases_deg.front();
        double d = seam_phase - b.phases_deg.back();
        d -= 360.0 * std::nearbyint(d / 360.0);
        b.angles_deg.push_back(b.angles_deg.front() + 360.0);
        b.mags_db.push_back(b.mags_db.front());
        b.phases_deg.push_back(b.phases_deg.back() + d);
    }

    std::sort(blocks.begin(), blocks.end(),
              [](const FreqBlock &a, const FreqBlock &b) { return a.freq_hz < b.freq_hz; });

    // The normalization peak of the block nearest the table's center
    // frequency becomes part of the nominal gain.
    double f_center = 0.5 * (blocks.front().freq_hz + blocks.back().freq_hz);
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < blocks.size(); ++i)
        if (std::abs(blocks[i].freq_hz - f_center) < std::abs(blocks[nearest].freq_hz - f_center))
            nearest = i;

    // Recover the removed peak: it was subtracted above, so recompute it from
    // the original samples of that block.
    double peak_db = -std::numeric_limits<double>::infinity();
    for (const auto &s : samples)
        if (s.freq_hz == blocks[nearest].freq_hz)
            peak_db = std::max(peak_db, s.mag_db);

    p.gain_dbi_ = base_gain_dbi + peak_db;
    if (!std::isfinite(p.gain_dbi_))
        throw std::invalid_argument("tabulated pattern: gain_dbi must be finite");
    p.blocks_ = std::move(blocks);
    return p;
}

AntennaPattern AntennaPattern::load_csv(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("pattern csv: cannot open " + file.string());
    return load_csv(in, file.string());
}

AntennaPattern AntennaPattern::load_csv(std::istream &in, const std::string &name)
{
    CsvReader reader(in, name);
    reader.expect_header({"angle_deg", "freq_hz", "mag_db", "phase_deg"});

    std::vector<PatternSample> samples;
    std::vector<double> row;
    while (reader.next_row(row))
    {
        PatternSample s;
        s.angle_deg = row[0];
        s.freq_hz = row[1];
        s.mag_db = row[2];
        s.phase_deg = row[3];
        samples.push_back(s);
    }
    if (samples.empty())
        throw std::runtime_error("pattern csv: " + name + ": no data rows");
    try
    {
        return tabulated(std::move(samples));
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error("pattern csv: " + name + ": " + e.what());
    }
}

double AntennaPattern::gain_linear() const { return db_to_linear(gain_dbi_); }

bool AntennaPattern::frequency_dependent() const
{
    return kind_ == PatternKind::tabulated && blocks_.size() > 1;
}

std::complex<double> AntennaPattern::eval(double freq_hz, double angle_deg) const
{
    switch (kind_)
    {
    case PatternKind::isotropic:
        return {1.0, 0.0};
    case PatternKind::gaussian_beam:
    {
        double t = wrap_deg(angle_deg) / hpbw_deg_;
        // |g|^2 = 2^(-4 t^2), so the half-power points land exactly at t=1/2.
        return {std::exp2(-2.0 * t * t), 0.0};
    }
    case PatternKind::tabulated:
        return eval_tabulated(freq_hz, angle_deg);
    }
    return {1.0, 0.0};
}

std::complex<double> AntennaPattern::eval_tabulated(double freq_hz, double angle_deg) const
{
    // Nearest frequency block; ties resolve to the lower frequency.
    std::size_t bi = 0;
    for (std::size_t i = 1; i < blocks_.size(); ++i)
        if (std::abs(blocks_[i].freq_hz - freq_hz) < std::abs(blocks_[bi].freq_hz - freq_hz))
            bi = i;
    const FreqBlock &b = blocks_[bi];

    // Map the query angle into [first, first + 360).
    double a0 = b.angles_deg.front();
    double a = std::fmod(angle_deg - a0, 360.0);
    if (a < 0.0)
        a += 360.0;
    a += a0;

    auto it = std::upper_bound(b.angles_deg.begin(), b.angles_deg.end(), a);
    std::size_t hi = static_cast<std::size_t>(it - b.angles_deg.begin());
    if (hi == 0)
        hi = 1; // a == a0 exactly
    if (hi >= b.angles_deg.size())
        hi = b.angles_deg.size() - 1;
    std::size_t lo = hi - 1;

    double span = b.angles_deg[hi] - b.angles_deg[lo];
    double t = span > 0.0 ? (a - b.angles_deg[lo]) / span : 0.0;
    double mag_db = b.mags_db[lo] + t * (b.mags_db[hi] - b.mags_db[lo]);
    double phase_deg = b.phases_deg[lo] + t * (b.phases_deg[hi] - b.phases_deg[lo]);

    double amp = db_to_amplitude(mag_db);
    return std::polar(amp, deg2rad(phase_deg));
}

} // namespace vaapl

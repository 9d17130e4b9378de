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

#ifndef VAAPL_PATTERN_HPP
#define VAAPL_PATTERN_HPP

#include <complex>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace vaapl
{

enum class PatternKind
{
    isotropic,
    gaussian_beam,
    tabulated
};

// One row of the pattern CSV (angle_deg, freq_hz, mag_db, phase_deg).
struct PatternSample
{
    double angle_deg = 0.0;
    double freq_hz = 0.0;
    double mag_db = 0.0;
    double phase_deg = 0.0;
};

// 2-D complex azimuth radiation pattern, boresight along 0 deg.
//
// Patterns are stored boresight-normalized: max_phi |g(f, phi)| = 1 for every
// supported frequency. The absolute gain that normalization removes
// is kept separately as gain_dbi(). Immutable after construction; eval() is a
// pure function and safe for concurrent readers.
class AntennaPattern
{
  public:
    // g(f, phi) = 1 everywhere, 0 dBi.
    static AntennaPattern isotropic();

    // Gaussian power pattern |g|^2 = exp(-4 ln2 (phi/hpbw)^2), zero phase,
    // frequency independent. hpbw_deg must lie in (0, 360).
    static AntennaPattern gaussian(double hpbw_deg, double gain_dbi = 0.0);

    // Tabulated pattern from pattern-CSV samples. Rows are grouped into
    // frequency blocks; within each block angles must be strictly increasing.
    // Magnitudes are renormalized per frequency so the peak is 0 dB; the
    // removed peak (taken from the block nearest the table's center
    // frequency) is absorbed into gain_dbi. Evaluation interpolates linearly
    // in (mag_db, unwrapped phase_deg) over angle, with wraparound continuity
    // across the +-180 deg seam, and picks the nearest frequency block.
    static AntennaPattern tabulated(std::vector<PatternSample> samples, double base_gain_dbi = 0.0);

    // Parse the pattern CSV format: header angle_deg,freq_hz,mag_db,phase_deg
    // with optional '#' comment lines.
    static AntennaPattern load_csv(const std::filesystem::path &file);
    static AntennaPattern load_csv(std::istream &in, const std::string &name = "<stream>");

    // Normalized complex pattern value; angle is periodic in 360 deg.
    std::complex<double> eval(double freq_hz, double angle_deg) const;

    PatternKind kind() const { return kind_; }
    double gain_dbi() const { return gain_dbi_; }
    double gain_linear() const;

    // True when eval depends on the frequency argument (tabulated patterns
    // with more than one frequency block).
    bool frequency_dependent() const;

    double hpbw_deg() const { return hpbw_deg_; } // gaussian only

  private:
    AntennaPattern() = default;

    struct FreqBlock
    {
        double freq_hz = 0.0;
        std::vector<double> angles_deg;  // strictly increasing, seam sample appended
        std::vector<double> mags_db;     // normalized, peak = 0 dB
        std::vector<double> phases_deg;  // unwrapped
    };

    std::complex<double> eval_tabulated(double freq_hz, double angle_deg) const;

    PatternKind kind_ = PatternKind::isotropic;
    double gain_dbi_ = 0.0;
    double hpbw_deg_ = 0.0;
    std::vector<FreqBlock> blocks_; // sorted by frequency
};

} // namespace vaapl

#endif

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

#ifndef VAAPL_TEST_UTIL_HPP
#define VAAPL_TEST_UTIL_HPP

#include "vaapl/channel.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace vaapl::test
{

// Sounder settings used throughout the tests: 28-30 GHz, 1001 points,
// 240 elements on r = 0.15 m, 90 deg window.
inline FrequencyGrid sounder_grid() { return FrequencyGrid(28e9, 30e9, 1001); }
inline UcaGeometry sounder_uca() { return UcaGeometry(240, 0.15); }
inline constexpr double sounder_window_deg = 90.0;

// Native delay-bin width of the sounder grid.
inline double sounder_bin_s()
{
    return 1.0 / (static_cast<double>(sounder_grid().num_points()) * sounder_grid().spacing_hz());
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0)
{
    double scale = std::max({std::abs(a), std::abs(b), abs_floor});
    return std::abs(a - b) <= rel * std::max(scale, 1e-300);
}

inline bool close_complex(std::complex<double> a, std::complex<double> b, double tol, double scale = 1.0)
{
    return std::abs(a - b) <= tol * scale;
}

// Independent reference transform: plain O(N^2) inverse DFT,
// q_n = sum_m x_m exp(+j 2 pi m n / N).
inline std::vector<std::complex<double>> naive_inverse_dft(const std::vector<std::complex<double>> &x,
                                                           std::size_t n_out)
{
    std::vector<std::complex<double>> q(n_out, {0.0, 0.0});
    for (std::size_t n = 0; n < n_out; ++n)
    {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t m = 0; m < x.size(); ++m)
        {
            double turns = static_cast<double>(m) * static_cast<double>(n) / static_cast<double>(n_out);
            acc += x[m] * cis_turns(turns);
        }
        q[n] = acc;
    }
    return q;
}

} // namespace vaapl::test

#endif

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

#ifndef VAAPL_COMMON_HPP
#define VAAPL_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace vaapl
{

// SI exact value
inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double pi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (pi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / pi); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// Wrap an angle to [-180, 180). Exact for grid angles that are binary
// fractions of a degree, so on-grid values stay on-grid.
inline double wrap_deg(double deg)
{
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w - 180.0;
}

// Wrap an angle difference to (-180, 180]. The beamforming window uses this
// convention: the +180 boundary belongs to the interval, -180 does not.
inline double wrap_deg_signed(double deg)
{
    return -wrap_deg(-deg);
}

// exp(j*2*pi*turns). The argument is reduced modulo one turn before sin/cos,
// so phases of many thousand cycles keep full precision.
inline std::complex<double> cis_turns(double turns)
{
    double r = turns - std::nearbyint(turns);
    double a = 2.0 * pi * r;
    return {std::cos(a), std::sin(a)};
}

// exp(j*2*pi*a*b). The product a*b is split into high/low parts with a fused
// multiply-add before the modulo-one reduction; delay-times-frequency products
// of ~1e4 cycles would otherwise lose ~5 digits of phase.
inline std::complex<double> cis_turns_product(double a, double b)
{
    double hi = a * b;
    double lo = std::fma(a, b, -hi);
    double r = (hi - std::nearbyint(hi)) + lo;
    double ang = 2.0 * pi * r;
    return {std::cos(ang), std::sin(ang)};
}

// Unit-phasor sequence exp(j*2*pi*scale*(x0 + n*dx)) for n = 0, 1, 2, ...
// evaluated by complex recurrence with periodic exact resynchronization.
class PhasorSequence
{
  public:
    PhasorSequence(double scale, double x0, double dx)
        : scale_(scale), x0_(x0), dx_(dx), step_(cis_turns_product(scale, dx))
    {
        current_ = cis_turns_product(scale_, x0_);
    }

    // Value at the current index, then advance.
    std::complex<double> next()
    {
        std::complex<double> v = current_;
        ++n_;
        if (n_ % resync_interval == 0)
            current_ = cis_turns_product(scale_, x0_ + static_cast<double>(n_) * dx_);
        else
            current_ *= step_;
        return v;
    }

  private:
    static constexpr std::size_t resync_interval = 128;
    double scale_, x0_, dx_;
    std::complex<double> step_, current_;
    std::size_t n_ = 0;
};

// Static block partition of [0, n). body(begin, end) must only write state
// owned by its own block; results are then identical for any worker count.
template <typename Fn>
void parallel_for_blocks(std::size_t n, unsigned threads, Fn &&body)
{
    if (threads <= 1 || n <= 1)
    {
        body(std::size_t{0}, n);
        return;
    }
    std::size_t workers = std::min<std::size_t>(threads, n);
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        std::size_t b = w * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e)
            break;
        pool.emplace_back([&body, b, e]() { body(b, e); });
    }
    for (auto &t : pool)
        t.join();
}

} // namespace vaapl

#endif

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaapl/pattern.hpp"
#include "vaapl/common.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace vaapl;

TEST_CASE("isotropic pattern is unity everywhere")
{
    AntennaPattern iso = AntennaPattern::isotropic();
    CHECK(iso.eval(29e9, 137.0) == std::complex<double>(1.0, 0.0));
    CHECK(iso.eval(28e9, -180.0) == std::complex<double>(1.0, 0.0));
    CHECK(iso.gain_dbi() == 0.0);
    CHECK_FALSE(iso.frequency_dependent());
}

TEST_CASE("gaussian pattern hits the half-power definition")
{
    AntennaPattern g = AntennaPattern::gaussian(40.0);

    // Half-power points at +-hpbw/2, exactly 0.5 in power.
    CHECK(std::norm(g.eval(29e9, 20.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(g.eval(29e9, 0.0)) == 1.0);

    // Closed-form power law at one beamwidth off boresight.
    double expected = std::exp(-4.0 * std::log(2.0));
    CHECK(std::norm(g.eval(28.5e9, 40.0)) == doctest::Approx(expected).epsilon(1e-12));

    CHECK(g.gain_dbi() == 0.0);
    CHECK(AntennaPattern::gaussian(40.0, 13.5).gain_dbi() == 13.5);

    CHECK_THROWS_AS(AntennaPattern::gaussian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(AntennaPattern::gaussian(-10.0), std::invalid_argument);
    CHECK_THROWS_AS(AntennaPattern::gaussian(360.0), std::invalid_argument);
}

TEST_CASE("gaussian symmetry and wraparound")
{
    AntennaPattern g = AntennaPattern::gaussian(33.0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i)
    {
        // Angles on a 1/16 deg lattice keep the +360 shift exact in binary.
        double a = static_cast<double>(static_cast<int>(rng() % 5760)) / 16.0 - 180.0;
        CHECK(std::abs(g.eval(29e9, a)) == doctest::Approx(std::abs(g.eval(29e9, -a))).epsilon(1e-12));
        CHECK(g.eval(29e9, a) == g.eval(29e9, a + 360.0));
    }
}

namespace
{

AntennaPattern pattern_from_text(const std::string &text)
{
    std::istringstream in(text);
    return AntennaPattern::load_csv(in, "test.csv");
}

} // namespace

TEST_CASE("pattern csv loads and renormalizes")
{
    // Peak of -2 dB at 0 deg moves into gain_dbi.
    AntennaPattern p = pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                         "# comment line\n"
                                         "-90,29e9,-12,0\n"
                                         "0,29e9,-2,0\n"
                                         "90,29e9,-12,0\n");
    CHECK(std::abs(p.eval(29e9, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.gain_dbi() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(p.kind() == PatternKind::tabulated);
}

TEST_CASE("tabulated gaussian tracks the closed form within 0.05 dB")
{
    AntennaPattern g = AntennaPattern::gaussian(40.0);
    std::ostringstream table;
    table << "angle_deg,freq_hz,mag_db,phase_deg\n";
    for (int a = -180; a < 180; ++a)
        table << a << ",29e9," << 10.0 * std::log10(std::norm(g.eval(29e9, a))) << ",0\n";
    AntennaPattern t = pattern_from_text(table.str());

    for (double a = -179.0; a < 179.0; a += 0.25)
    {
        double db_gauss = 20.0 * std::log10(std::abs(g.eval(29e9, a)));
        double db_table = 20.0 * std::log10(std::abs(t.eval(29e9, a)));
        if (db_gauss < -80.0)
            continue; // interpolation error in the deep tail is irrelevant
        CHECK(std::abs(db_gauss - db_table) < 0.05);
    }
}

TEST_CASE("pattern csv rejects bad input")
{
    CHECK_THROWS(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                   "0,29e9,0,0\n"
                                   "90,29e9,-3,0\n"
                                   "45,29e9,-1,0\n")); // non-monotonic angles
    CHECK_THROWS(pattern_from_text(""));               // empty
    CHECK_THROWS(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"));
    CHECK_THROWS(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                   "0,29e9,zero,0\n")); // malformed number
    CHECK_THROWS(pattern_from_text("bad,header,row,names\n0,29e9,0,0\n"));
    CHECK_THROWS(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                   "0,29e9,0\n")); // short row
    CHECK_THROWS(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                   "0,29e9,0,0\n")); // single angle
}

TEST_CASE("tabulated pattern interpolates phase unwrapped and wraps the seam")
{
    // Phase ramps from 170 to 190 deg across the seam between samples; naive
    // wrapped interpolation would pass through 0 instead.
    AntennaPattern p = pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                         "0,29e9,0,170\n"
                                         "90,29e9,0,-170\n"
                                         "180,29e9,0,-150\n"
                                         "270,29e9,0,-130\n");
    std::complex<double> mid = p.eval(29e9, 45.0);
    CHECK(std::arg(mid) == doctest::Approx(deg2rad(180.0)).epsilon(1e-9));

    // The seam segment interpolates between the last and first samples, and
    // both representations of the same angle agree exactly.
    CHECK(p.eval(29e9, -45.0) == p.eval(29e9, 315.0));
    CHECK(std::abs(p.eval(29e9, -45.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tabulated pattern selects the nearest frequency block")
{
    AntennaPattern p = pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                         "-90,28e9,-20,0\n"
                                         "0,28e9,0,0\n"
                                         "90,28e9,-20,0\n"
                                         "-90,30e9,-10,0\n"
                                         "0,30e9,0,0\n"
                                         "90,30e9,-10,0\n");
    CHECK(p.frequency_dependent());
    CHECK(20.0 * std::log10(std::abs(p.eval(28.1e9, 90.0))) == doctest::Approx(-20.0).epsilon(1e-9));
    CHECK(20.0 * std::log10(std::abs(p.eval(29.9e9, 90.0))) == doctest::Approx(-10.0).epsilon(1e-9));
}

TEST_CASE("boresight normalization holds for every kind")
{
    std::vector<AntennaPattern> patterns;
    patterns.push_back(AntennaPattern::isotropic());
    patterns.push_back(AntennaPattern::gaussian(25.0, 7.0));
    patterns.push_back(pattern_from_text("angle_deg,freq_hz,mag_db,phase_deg\n"
                                         "-120,29e9,-9,10\n"
                                         "-30,29e9,-1.5,40\n"
                                         "60,29e9,-4,90\n"
                                         "150,29e9,-15,130\n"));
    for (const auto &p : patterns)
    {
        double peak = 0.0;
        for (double a = -180.0; a < 180.0; a += 0.01)
            peak = std::max(peak, std::abs(p.eval(29e9, a)));
        CHECK(peak == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(peak <= 1.0 + 1e-9);
    }
}

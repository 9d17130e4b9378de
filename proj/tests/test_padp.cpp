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

#include "test_util.hpp"
#include "vaapl/padp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace vaapl;
using namespace vaapl::test;

namespace
{

Padp single_path_padp(double azimuth_deg, std::size_t delay_bin, std::complex<double> amplitude,
                      const AntennaPattern &element, const PadpOptions &options = {})
{
    FrequencyGrid grid = sounder_grid();
    PathSet truth = {Path(azimuth_deg, static_cast<double>(delay_bin) * sounder_bin_s(), amplitude)};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), element, grid);
    return compute_padp(beamform_spectrum(cfr, {}, 2), options);
}

std::size_t angle_index(const Padp &padp, double azimuth_deg)
{
    const auto &grid = padp.angle_grid_deg();
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (grid[j] == azimuth_deg)
            return j;
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("delay grid of the sounder sweep")
{
    Padp padp = single_path_padp(0.0, 100, {1.0, 0.0}, AntennaPattern::isotropic());
    REQUIRE(padp.num_delays() == 1001);
    double dt = padp.delay_grid_s()[1] - padp.delay_grid_s()[0];
    CHECK(dt == doctest::Approx(0.4995004995e-9).epsilon(1e-9));
    CHECK(padp.delay_grid_s().back() < 500e-9);
    CHECK(padp.delay_grid_s().front() == 0.0);
}

TEST_CASE("single on-grid path peaks at (amplitude * array gain)^2")
{
    Padp padp = single_path_padp(0.0, 100, {1.0, 0.0}, AntennaPattern::isotropic());
    std::size_t j0 = angle_index(padp, 0.0);
    CHECK(padp.at(100, j0) == doctest::Approx(14641.0).epsilon(1e-9)); // 121^2

    // Scaled amplitude: peak scales with |amplitude|^2.
    Padp padp2 = single_path_padp(0.0, 100, {0.0, 2e-5}, AntennaPattern::isotropic());
    CHECK(padp2.at(100, j0) == doctest::Approx(14641.0 * 4e-10).epsilon(1e-9));
}

TEST_CASE("transform matches the naive inverse DFT oracle")
{
    // Small random spectrum, checked column by column against the O(N^2) sum.
    FrequencyGrid grid(28e9, 28.2e9, 32);
    std::vector<double> angles = make_steering_grid(4);
    std::mt19937_64 rng(17);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    std::vector<std::complex<double>> data(4 * 32);
    for (auto &v : data)
        v = {uniform(), uniform()};
    BeamSpectrum spectrum(grid, angles, data);

    Padp padp = compute_padp(spectrum);
    for (std::size_t j = 0; j < 4; ++j)
    {
        std::vector<std::complex<double>> column(spectrum.angle_column(j).begin(),
                                                 spectrum.angle_column(j).end());
        auto oracle = naive_inverse_dft(column, 32);
        for (std::size_t n = 0; n < 32; ++n)
            CHECK(padp.at(n, j) ==
                  doctest::Approx(std::norm(oracle[n]) / (32.0 * 32.0)).epsilon(1e-10));
    }
}

TEST_CASE("Parseval identity per angle column")
{
    UcaGeometry geom(32, 0.15);
    FrequencyGrid grid(28e9, 30e9, 257);
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(3.0, 63.7e-9, {1.0, 0.4}), Path(-130.0, 97.3e-9, {0.2, -0.8})};
    BeamSpectrum q = beamform_spectrum(synth_vaa_cfr(truth, geom, g40, grid), {});
    Padp padp = compute_padp(q);

    double f_count = static_cast<double>(grid.num_points());
    for (std::size_t j = 0; j < padp.num_angles(); ++j)
    {
        // sum_tau |q|^2 / F == sum_f |Q|^2; power cells carry |q|^2 / F^2.
        double lhs = 0.0;
        for (std::size_t n = 0; n < padp.num_delays(); ++n)
            lhs += padp.at(n, j) * f_count * f_count;
        lhs /= f_count;
        double rhs = 0.0;
        for (std::size_t i = 0; i < grid.num_points(); ++i)
            rhs += std::norm(q.at(i, j));
        CHECK(close_rel(lhs, rhs, 1e-9));
    }
}

TEST_CASE("zero input gives an all-zero profile")
{
    FrequencyGrid grid(28e9, 30e9, 64);
    BeamSpectrum zero(grid, make_steering_grid(8),
                      std::vector<std::complex<double>>(8 * 64, {0.0, 0.0}));
    Padp padp = compute_padp(zero);
    for (double v : padp.power())
        CHECK(v == 0.0);
    CHECK(detect_paths(padp).empty());
}

TEST_CASE("zero padding refines the delay grid and keeps the peak normalization")
{
    PadpOptions options;
    options.zero_pad_factor = 4;
    Padp padp = single_path_padp(0.0, 100, {1.0, 0.0}, AntennaPattern::isotropic(), options);
    CHECK(padp.num_delays() == 4 * 1001);
    double dt = padp.delay_grid_s()[1] - padp.delay_grid_s()[0];
    CHECK(dt == doctest::Approx(0.4995004995e-9 / 4.0).epsilon(1e-9));
    // The original on-grid bin lands at index 400.
    CHECK(padp.at(400, angle_index(padp, 0.0)) == doctest::Approx(14641.0).epsilon(1e-9));
}

TEST_CASE("hann window keeps the coherent peak calibration")
{
    PadpOptions options;
    options.window = SpectralWindow::hann;
    Padp padp = single_path_padp(0.0, 100, {1.0, 0.0}, AntennaPattern::isotropic(), options);
    CHECK(padp.at(100, angle_index(padp, 0.0)) == doctest::Approx(14641.0).epsilon(1e-6));
}

TEST_CASE("aggregate profile collapses angles")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(24.0, 20 * dt, {1.0, 0.0}), Path(24.0, 60 * dt, {0.5, 0.0})};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), g40, grid);
    Padp padp = compute_padp(beamform_spectrum(cfr, {}, 2));

    std::vector<double> pdp = aggregate_pdp(padp);
    REQUIRE(pdp.size() == 1001);

    // Two dominant bins, 10 ns and 30 ns at the 0.5 ns resolution.
    std::vector<std::size_t> order(pdp.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pdp[a] > pdp[b]; });
    CHECK(order[0] == 20);
    CHECK(order[1] == 60);
    CHECK(pdp[60] > 100.0 * pdp[order[2]]);
}

TEST_CASE("noise floor estimator")
{
    // Constant profile: the median is the constant.
    Padp constant(PadpKind::dss, [] {
        std::vector<double> d(100);
        for (std::size_t i = 0; i < 100; ++i)
            d[i] = static_cast<double>(i + 1) * 1e-9;
        return d;
    }(), {0.0, 90.0}, std::vector<double>(200, 3.5e-7));
    CHECK(estimate_noise_floor(constant) == doctest::Approx(3.5e-7).epsilon(1e-12));

    // Noiseless scan scene with paths well before the tail: the per-angle
    // spectra are pure on-grid tones, so the tail is empty to round-off.
    {
        FrequencyGrid grid = sounder_grid();
        PathSet truth = {Path(0.0, 150 * sounder_bin_s(), {1.0, 0.0})};
        CfrMatrix dss = synth_dss_cfr(truth, make_steering_grid(240),
                                      AntennaPattern::gaussian(40.0), grid);
        Padp clean_scan = compute_padp(dss);
        CHECK(estimate_noise_floor(clean_scan) <= 1e-12 * clean_scan.max_power());
    }

    // The beamformed profile keeps a tiny leakage floor from the frequency
    // variation of the beam patterns; still ten orders below the peak.
    Padp clean = single_path_padp(0.0, 150, {1.0, 0.0}, AntennaPattern::gaussian(40.0));
    CHECK(estimate_noise_floor(clean) <= 1e-10 * clean.max_power());

    // Injected noise on a directional scan: floor within 2 dB of the
    // per-cell mean sigma^2/F (median of an exponential sits 1.6 dB low).
    FrequencyGrid grid = sounder_grid();
    auto rotations = make_steering_grid(240);
    CfrMatrix zero = synth_dss_cfr({}, rotations, AntennaPattern::isotropic(), grid);
    CfrMatrix noisy = add_noise(zero, -100.0, 7);
    Padp padp = compute_padp(noisy);
    double expected = db_to_linear(-100.0) / 1001.0;
    double floor = estimate_noise_floor(padp);
    CHECK(std::abs(10.0 * std::log10(floor / expected)) < 2.0);

    // Flat-noise aggregate profile stays within 3 dB of its median for
    // almost every bin (max-over-angle statistics, fixed seed).
    std::vector<double> pdp = aggregate_pdp(padp);
    std::vector<double> sorted = pdp;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    std::size_t within = 0;
    for (double v : pdp)
        if (std::abs(10.0 * std::log10(v / median)) <= 3.0)
            ++within;
    CHECK(static_cast<double>(within) / static_cast<double>(pdp.size()) > 0.97);

    // Degenerate grids are rejected.
    Padp tiny(PadpKind::dss, {0.0, 1e-9}, {0.0}, {1.0, 2.0});
    CHECK_THROWS_AS(estimate_noise_floor(tiny), std::invalid_argument);
}

TEST_CASE("detection: two paths at one delay, 90 deg apart, isotropic array")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern iso = AntennaPattern::isotropic();
    PathSet truth = {Path(0.0, 150 * dt, {1.0, 0.0}), Path(90.0, 150 * dt, {0.0, 1.0})};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), iso, grid);
    Padp padp = compute_padp(beamform_spectrum(cfr, {}, 2));

    // The isotropic-element array has grating side lobes around -10.2 dB on
    // this grid; a 10 dB dynamic range keeps only the true peaks.
    PeakSearchConfig config;
    config.dynamic_range_db = 10.0;
    auto detected = detect_paths(padp, config);
    REQUIRE(detected.size() == 2);
    CHECK(detected[0].delay_s == doctest::Approx(150 * dt).epsilon(1e-12));
    CHECK(detected[1].delay_s == doctest::Approx(150 * dt).epsilon(1e-12));
    std::vector<double> azimuths = {detected[0].azimuth_deg, detected[1].azimuth_deg};
    std::sort(azimuths.begin(), azimuths.end());
    CHECK(azimuths[0] == 0.0);
    CHECK(azimuths[1] == 90.0);
}

TEST_CASE("detection: single path round trip against the array gain")
{
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    std::complex<double> alpha{3e-5, -4e-5};
    Padp padp = single_path_padp(-34.5, 210, alpha, g40);
    auto detected = detect_paths(padp);
    REQUIRE(detected.size() == 1);
    CHECK(detected[0].azimuth_deg == -34.5);

    double gain = array_gain(sounder_uca(), g40, 29e9, -34.5, sounder_window_deg);
    CHECK(detected[0].power_linear / (gain * gain) ==
          doctest::Approx(std::norm(alpha)).epsilon(1e-6));
}

TEST_CASE("detection: noise-only profile comes back empty")
{
    FrequencyGrid grid = sounder_grid();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL})
    {
        CfrMatrix zero = synth_vaa_cfr({}, sounder_uca(), g40, grid);
        CfrMatrix noisy = add_noise(zero, -100.0, seed);
        Padp padp = compute_padp(beamform_spectrum(noisy, {}, 2));
        CHECK(detect_paths(padp).empty());
    }
}

TEST_CASE("detection: raising the threshold never adds paths")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(0.0, 100 * dt, {1e-4, 0.0}), Path(60.0, 180 * dt, {4e-5, 0.0}),
                     Path(-90.0, 320 * dt, {1.5e-5, 0.0})};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), g40, grid);
    CfrMatrix noisy = add_noise(cfr, -105.0, 9);
    Padp padp = compute_padp(beamform_spectrum(noisy, {}, 2));

    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (double threshold : {3.0, 6.0, 10.0, 15.0, 20.0})
    {
        PeakSearchConfig config;
        config.threshold_db_above_noise = threshold;
        std::size_t count = detect_paths(padp, config).size();
        CHECK(count <= previous);
        previous = count;
    }
}

TEST_CASE("detection: permutation invariance and rotation equivariance")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(0.0, 100 * dt, {1e-4, 0.0}), Path(81.0, 100 * dt, {0.0, 8e-5}),
                     Path(-120.0, 200 * dt, {5e-5, 5e-5})};

    auto detect_scene = [&](const PathSet &paths) {
        CfrMatrix cfr = synth_vaa_cfr(paths, sounder_uca(), g40, grid);
        return detect_paths(compute_padp(beamform_spectrum(cfr, {}, 2)));
    };

    auto base = detect_scene(truth);
    REQUIRE(base.size() == 3);

    PathSet shuffled = {truth[2], truth[0], truth[1]};
    auto permuted = detect_scene(shuffled);
    REQUIRE(permuted.size() == 3);
    auto key = [](const DetectedPath &d) { return std::make_pair(d.delay_s, d.azimuth_deg); };
    auto sorted_keys = [&](std::vector<DetectedPath> v) {
        std::vector<std::pair<double, double>> keys;
        for (const auto &d : v)
            keys.push_back(key(d));
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    CHECK(sorted_keys(base) == sorted_keys(permuted));

    // Rotating the scene by two grid steps rotates the detected azimuths.
    PathSet rotated;
    for (const auto &p : truth)
        rotated.emplace_back(p.azimuth_deg + 3.0, p.delay_s, p.amplitude);
    auto rot = detect_scene(rotated);
    REQUIRE(rot.size() == 3);
    auto base_keys = sorted_keys(base);
    auto rot_keys = sorted_keys(rot);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(rot_keys[i].first == base_keys[i].first);
        CHECK(wrap_deg(rot_keys[i].second - base_keys[i].second) == doctest::Approx(3.0));
    }
}

TEST_CASE("detection: every reported path is a strict local maximum")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(16.5, 90 * dt, {1e-4, 2e-5}), Path(-140.0, 91.6 * dt, {6e-5, 0.0}),
                     Path(75.0, 300 * dt, {2e-5, -3e-5})};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), g40, grid);
    CfrMatrix noisy = add_noise(cfr, -110.0, 21);
    Padp padp = compute_padp(beamform_spectrum(noisy, {}, 2));

    auto detected = detect_paths(padp);
    CHECK(!detected.empty());
    std::vector<double> pdp = aggregate_pdp(padp);
    for (const auto &d : detected)
    {
        std::size_t n = static_cast<std::size_t>(std::round(d.delay_s / dt));
        std::size_t j = angle_index(padp, d.azimuth_deg);
        if (n > 0)
            CHECK(pdp[n] > pdp[n - 1]);
        if (n + 1 < pdp.size())
            CHECK(pdp[n] > pdp[n + 1]);
        std::size_t na = padp.num_angles();
        CHECK(padp.at(n, j) > padp.at(n, (j + 1) % na));
        CHECK(padp.at(n, j) > padp.at(n, (j + na - 1) % na));
    }
}

TEST_CASE("detection: sorted by power with deterministic tie-breaking")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    PathSet truth = {Path(30.0, 100 * dt, {1e-4, 0.0}), Path(-60.0, 250 * dt, {5e-5, 0.0})};
    CfrMatrix cfr = synth_vaa_cfr(truth, sounder_uca(), g40, grid);
    auto detected = detect_paths(compute_padp(beamform_spectrum(cfr, {}, 2)));
    REQUIRE(detected.size() == 2);
    CHECK(detected[0].power_linear > detected[1].power_linear);
    CHECK(detected[0].azimuth_deg == 30.0);
}

TEST_CASE("directional-scan profiles use delay-only detection")
{
    FrequencyGrid grid = sounder_grid();
    double dt = sounder_bin_s();
    AntennaPattern g40 = AntennaPattern::gaussian(40.0);
    // Two co-delay paths: the scan keeps only the strongest angular cell.
    PathSet truth = {Path(0.0, 150 * dt, {1e-4, 0.0}), Path(90.0, 150 * dt, {0.0, 9e-5})};
    CfrMatrix dss = synth_dss_cfr(truth, make_steering_grid(240), g40, grid);
    Padp padp = compute_padp(dss);
    CHECK(padp.kind() == PadpKind::dss);

    auto detected = detect_paths(padp);
    REQUIRE(detected.size() == 1);
    CHECK(detected[0].azimuth_deg == 0.0); // the stronger path's boresight cell
    CHECK(detected[0].delay_s == doctest::Approx(150 * dt).epsilon(1e-12));

    // Raw virtual-array input must be beamformed first.
    CfrMatrix vaa = synth_vaa_cfr(truth, sounder_uca(), g40, grid);
    CHECK_THROWS_AS(compute_padp(vaa), std::invalid_argument);
}

TEST_CASE("padp options validation")
{
    PadpOptions bad;
    bad.zero_pad_factor = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    PeakSearchConfig cfg;
    cfg.threshold_db_above_noise = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.dynamic_range_db = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.delay_neighborhood = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

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

#include "vaapl/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vaapl
{

AngleGainTable::AngleGainTable(std::vector<double> angles_deg, std::vector<double> gains_db)
    : angles_deg_(std::move(angles_deg)), gains_db_(std::move(gains_db))
{
    if (angles_deg_.size() != gains_db_.size() || angles_deg_.size() < 2)
        throw std::invalid_argument("AngleGainTable: need at least 2 (angle, gain) pairs");
    for (std::size_t i = 1; i < angles_deg_.size(); ++i)
        if (!(angles_deg_[i] > angles_deg_[i - 1]))
            throw std::invalid_argument("AngleGainTable: angles not strictly increasing");
    if (angles_deg_.back() - angles_deg_.front() >= 360.0)
        throw std::invalid_argument("AngleGainTable: angles span 360 deg or more");
    // Close the circle.
    angles_deg_.push_back(angles_deg_.front() + 360.0);
    gains_db_.push_back(gains_db_.front());
}

double AngleGainTable::gain_linear(double angle_deg) const
{
    double a0 = angles_deg_.front();
    double a = std::fmod(angle_deg - a0, 360.0);
    if (a < 0.0)
        a += 360.0;
    a += a0;
    std::size_t hi = 1;
    while (hi + 1 < angles_deg_.size() && angles_deg_[hi] < a)
        ++hi;
    std::size_t lo = hi - 1;
    double span = angles_deg_[hi] - angles_deg_[lo];
    double t = span > 0.0 ? (a - angles_deg_[lo]) / span : 0.0;
    return db_to_linear(gains_db_[lo] + t * (gains_db_[hi] - gains_db_[lo]));
}

std::string method_name(EstimationMethod method)
{
    switch (method)
    {
    case EstimationMethod::proposed_vaa:
        return "proposed_vaa";
    case EstimationMethod::ref1_sum_all:
        return "ref1_sum_all";
    case EstimationMethod::ref2_delay_max:
        return "ref2_delay_max";
    case EstimationMethod::free_space:
        return "free_space";
    case EstimationMethod::ground_truth:
        return "ground_truth";
    }
    return "unknown";
}

PathlossEstimate pl_omni_vaa(const std::vector<DetectedPath> &detected, const GainBudget &budget,
                             double f_center_hz)
{
    if (detected.empty())
        throw std::runtime_error("pl_omni_vaa: no paths above threshold");
    if (!budget.array_gain)
        throw std::invalid_argument("pl_omni_vaa: gain budget lacks an array gain provider");

    PathlossEstimate result;
    result.method = EstimationMethod::proposed_vaa;
    result.path_count = detected.size();

    double total = 0.0;
    for (const auto &path : detected)
    {
        double gain = budget.array_gain(f_center_hz, path.azimuth_deg);
        if (!(gain > 0.0))
            throw std::runtime_error("pl_omni_vaa: non-positive array gain toward detected path");
        double denom = budget.tx(path.azimuth_deg) * budget.rx(path.azimuth_deg) * gain * gain;
        double normalized = path.power_linear / denom;
        total += normalized;
        result.contributions.push_back(
            {path.azimuth_deg, path.delay_s, path.power_linear, normalized});
    }
    result.pathloss_db = -linear_to_db(total);
    return result;
}

PathlossEstimate pl_omni_ref1(const Padp &dss_padp, const GainBudget &budget,
                              double threshold_db_above_noise)
{
    if (dss_padp.kind() != PadpKind::dss)
        throw std::invalid_argument("pl_omni_ref1: requires a directional-scan profile");
    if (!(threshold_db_above_noise > 0.0))
        throw std::invalid_argument("pl_omni_ref1: threshold must be positive");

    double floor = estimate_noise_floor(dss_padp);
    double gate = floor * db_to_linear(threshold_db_above_noise);

    // The rotated antenna points everywhere over the scan, so the per-cell
    // gain correction is the nominal (scalar) gain product only.
    double denom = budget.tx_gain_linear * budget.rx_gain_linear;

    double total = 0.0;
    std::size_t cells = 0;
    for (std::size_t j = 0; j < dss_padp.num_angles(); ++j)
        for (double cell : dss_padp.angle_column(j))
            if (cell > gate && cell > 0.0)
            {
                total += cell;
                ++cells;
            }

    if (total <= 0.0)
        throw std::runtime_error("pl_omni_ref1: no power above noise");

    PathlossEstimate result;
    result.method = EstimationMethod::ref1_sum_all;
    result.path_count = cells;
    double nan = std::numeric_limits<double>::quiet_NaN();
    result.contributions.push_back({nan, nan, total, total / denom});
    result.pathloss_db = -linear_to_db(total / denom);
    return result;
}

PathlossEstimate pl_omni_ref2(const Padp &dss_padp, const GainBudget &budget,
                              const PeakSearchConfig &config)
{
    if (dss_padp.kind() != PadpKind::dss)
        throw std::invalid_argument("pl_omni_ref2: requires a directional-scan profile");

    std::vector<DetectedPath> bins = detect_paths(dss_padp, config);
    if (bins.empty())
        throw std::runtime_error("pl_omni_ref2: no delay bins above threshold");

    // Assumes each bin's strongest cell is a boresight-aligned look, so the
    // normalized element gain is 1 and only the nominal gains divide out.
    double denom = budget.tx_gain_linear * budget.rx_gain_linear;

    PathlossEstimate result;
    result.method = EstimationMethod::ref2_delay_max;
    result.path_count = bins.size();

    double total = 0.0;
    for (const auto &bin : bins)
    {
        double normalized = bin.power_linear / denom;
        total += normalized;
        result.contributions.push_back({bin.azimuth_deg, bin.delay_s, bin.power_linear, normalized});
    }
    result.pathloss_db = -linear_to_db(total);
    return result;
}

} // namespace vaapl

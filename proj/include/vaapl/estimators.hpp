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

#ifndef VAAPL_ESTIMATORS_HPP
#define VAAPL_ESTIMATORS_HPP

#include "vaapl/padp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vaapl
{

// Piecewise-linear gain over azimuth with wraparound, for antennas whose
// nominal gain ripples with angle.
class AngleGainTable
{
  public:
    AngleGainTable(std::vector<double> angles_deg, std::vector<double> gains_db);

    double gain_linear(double angle_deg) const;

  private:
    std::vector<double> angles_deg_; // strictly increasing, seam appended
    std::vector<double> gains_db_;
};

// Antenna-gain bookkeeping for the pathloss estimators. Scalar gains by
// default; optional per-angle tables. The array gain provider returns the
// beamformer's amplitude gain toward a given azimuth.
struct GainBudget
{
    double tx_gain_linear = 1.0;
    double rx_gain_linear = 1.0;
    std::optional<AngleGainTable> tx_table;
    std::optional<AngleGainTable> rx_table;
    std::function<double(double freq_hz, double azimuth_deg)> array_gain;

    double tx(double azimuth_deg) const
    {
        return tx_table ? tx_table->gain_linear(azimuth_deg) : tx_gain_linear;
    }
    double rx(double azimuth_deg) const
    {
        return rx_table ? rx_table->gain_linear(azimuth_deg) : rx_gain_linear;
    }
};

enum class EstimationMethod
{
    proposed_vaa,
    ref1_sum_all,
    ref2_delay_max,
    free_space,
    ground_truth
};

std::string method_name(EstimationMethod method);

struct PathContribution
{
    // NaN azimuth/delay mark aggregate contributions without a single cell.
    double azimuth_deg = 0.0;
    double delay_s = 0.0;
    double raw_power_linear = 0.0;
    double normalized_power_linear = 0.0; // after antenna/array gain division
};

struct PathlossEstimate
{
    EstimationMethod method = EstimationMethod::proposed_vaa;
    double pathloss_db = 0.0;
    std::size_t path_count = 0;
    std::vector<PathContribution> contributions; // normalized parts sum to the total
};

// Proposed estimator: each detected path's power is divided by the transmit
// and receive gains and by the squared array amplitude gain toward the path,
// then the normalized powers are summed:
//   PL = -10 log10( sum_k P_k / (Gtx(az_k) Grx(az_k) |v(f, az_k)|^2) ).
// The squared gain matches the profile normalization, where a path of
// amplitude A peaks at (A*|v|)^2, so a clean single-path scene round-trips to
// the true pathloss exactly.
PathlossEstimate pl_omni_vaa(const std::vector<DetectedPath> &detected, const GainBudget &budget,
                             double f_center_hz);

// Reference method 1: sum every profile cell above the noise gate and divide
// by the antenna gains (the rotated element's nominal gain is part of the tx
// gain). Overcounts paths seen from several rotation angles.
PathlossEstimate pl_omni_ref1(const Padp &dss_padp, const GainBudget &budget,
                              double threshold_db_above_noise = 6.0);

// Reference method 2: detect delay bins on the aggregate profile, keep only
// the strongest angular cell per bin, normalize by the boresight-aligned
// antenna gains. Masks paths that share a delay bin.
PathlossEstimate pl_omni_ref2(const Padp &dss_padp, const GainBudget &budget,
                              const PeakSearchConfig &config = {});

} // namespace vaapl

#endif

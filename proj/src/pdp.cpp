// SPDX-License-Identifier: Apache-2.0
//
// smallscale - spatial fading and autocorrelation statistics for
// linear-track channel measurements
// Copyright (C) 2026 smallscale contributors
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

#include "smallscale/pdp.hpp"

#include <algorithm>
#include <cmath>

#include "smallscale/errors.hpp"

namespace smallscale {

void ThresholdPolicy::validate() const {
    if (!(peak_down_db > 0.0))
        throw ValidationError("threshold: peak_down_db must be positive");
    if (!(noise_up_db >= 0.0))
        throw ValidationError("threshold: noise_up_db must be non-negative");
}

double estimate_noise_floor(const Pdp &pdp, double tail_fraction) {
    pdp.validate();
    if (!(tail_fraction > 0.0) || tail_fraction > 0.5)
        throw UsageError("estimate_noise_floor: tail_fraction must lie in (0, 0.5]");
    const std::size_t n = pdp.powers_mw.size();
    const std::size_t count = static_cast<std::size_t>(static_cast<double>(n) * tail_fraction);
    if (count == 0)
        throw ValidationError("estimate_noise_floor: tail window is empty");
    double sum = 0.0;
    for (std::size_t i = n - count; i < n; ++i)
        sum += pdp.powers_mw[i];
    return mw_to_dbm(sum / static_cast<double>(count));
}

double resolve_noise_floor(const TrackScan &scan, const Pdp &pdp) {
    if (pdp.noise_floor_dbm)
        return *pdp.noise_floor_dbm;
    if (scan.noise_floor_dbm)
        return *scan.noise_floor_dbm;
    return estimate_noise_floor(pdp, kDefaultNoiseTailFraction);
}

Pdp apply_double_threshold(const Pdp &pdp, const ThresholdPolicy &policy,
                           double noise_floor_dbm) {
    pdp.validate();
    policy.validate();
    const double peak = pdp.peak_mw();
    if (!(peak > 0.0))
        throw DegenerateError("apply_double_threshold: all-zero PDP");

    const double cutoff_mw = std::max(peak * db_to_linear(-policy.peak_down_db),
                                      dbm_to_mw(noise_floor_dbm + policy.noise_up_db));

    Pdp out = pdp;
    for (double &p : out.powers_mw) {
        const bool is_peak = (p == peak);
        if (p < cutoff_mw && !is_peak)
            p = 0.0;
    }
    return out;
}

Pdp apply_double_threshold(const Pdp &pdp, const ThresholdPolicy &policy) {
    if (!pdp.noise_floor_dbm)
        throw UsageError("apply_double_threshold: PDP has no noise floor; pass one "
                         "explicitly or estimate it first");
    return apply_double_threshold(pdp, policy, *pdp.noise_floor_dbm);
}

double integrate_power(const Pdp &pdp) {
    double sum = 0.0;
    for (double p : pdp.powers_mw)
        sum += p;
    return sum;
}

double voltage_amplitude(double power_mw) {
    if (!(power_mw >= 0.0))
        throw UsageError("voltage_amplitude: power must be non-negative");
    return std::sqrt(power_mw);
}

double directional_power(const TrackScan &scan, std::size_t position, int azimuth_deg,
                         const ThresholdPolicy &policy) {
    const Pdp *pdp = scan.find(position, azimuth_deg);
    if (pdp == nullptr)
        throw DegenerateError("no record for azimuth " + std::to_string(azimuth_deg) +
                              " at position " + std::to_string(position) +
                              " (no signal at this pointing angle?)");
    const double floor = resolve_noise_floor(scan, *pdp);
    return integrate_power(apply_double_threshold(*pdp, policy, floor));
}

double synthesize_omni(const TrackScan &scan, std::size_t position,
                       const ThresholdPolicy &policy) {
    double total = 0.0;
    bool any = false;
    for (int azimuth : scan.azimuths()) {
        const Pdp *pdp = scan.find(position, azimuth);
        if (pdp == nullptr)
            continue; // missing angle contributes zero
        const double floor = resolve_noise_floor(scan, *pdp);
        total += integrate_power(apply_double_threshold(*pdp, policy, floor));
        any = true;
    }
    if (!any)
        throw DegenerateError("synthesize_omni: no records at position " +
                              std::to_string(position));
    return total;
}

std::string mode_name(const TrackMode &mode) {
    return mode.omni ? "omni" : "az:" + std::to_string(mode.azimuth_deg);
}

AmplitudeTrack scan_to_amplitude_track(const TrackScan &scan, const TrackMode &mode,
                                       const ThresholdPolicy &policy) {
    scan.validate();
    AmplitudeTrack track;
    track.spacing_wavelengths = scan.geometry.spacing_wavelengths;
    track.label = mode_name(mode);
    track.amplitudes.reserve(scan.geometry.num_positions);
    for (std::size_t pos = 0; pos < scan.geometry.num_positions; ++pos) {
        const double power = mode.omni ? synthesize_omni(scan, pos, policy)
                                       : directional_power(scan, pos, mode.azimuth_deg, policy);
        if (!(power > 0.0))
            throw DegenerateError("scan_to_amplitude_track: zero power at position " +
                                  std::to_string(pos) + " for " + mode_name(mode) +
                                  " (no signal)");
        track.amplitudes.push_back(voltage_amplitude(power));
    }
    return track;
}

} // namespace smallscale

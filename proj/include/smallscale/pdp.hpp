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

#ifndef SMALLSCALE_PDP_HPP
#define SMALLSCALE_PDP_HPP

#include "smallscale/model.hpp"

namespace smallscale {

/// Double-threshold noise rejection: bins survive only above both
/// (peak - peak_down_db) and (noise floor + noise_up_db).
struct ThresholdPolicy {
    double peak_down_db = 20.0;
    double noise_up_db = 5.0;

    void validate() const;
};

/// Fraction of trailing delay bins used when a noise floor has to be
/// estimated from the PDP itself.
inline constexpr double kDefaultNoiseTailFraction = 0.25;

/// Mean power (dBm) of the last tail_fraction of delay bins. Only used
/// when neither the record nor the scan header supplies a measured floor.
double estimate_noise_floor(const Pdp &pdp, double tail_fraction);

/// Measured floor from the record, else the scan header, else estimated.
double resolve_noise_floor(const TrackScan &scan, const Pdp &pdp);

/// Applies the double threshold with an explicit noise floor. Bins below
/// the combined cutoff are zeroed in place of removal so delay alignment
/// is preserved; the peak bin always survives.
Pdp apply_double_threshold(const Pdp &pdp, const ThresholdPolicy &policy,
                           double noise_floor_dbm);

/// Same, taking the noise floor from the PDP itself (throws when unset).
Pdp apply_double_threshold(const Pdp &pdp, const ThresholdPolicy &policy);

/// Total power under the PDP curve in the linear scale (mW).
double integrate_power(const Pdp &pdp);

/// Received-signal voltage amplitude: sqrt of total linear power.
double voltage_amplitude(double power_mw);

/// Thresholded, integrated power of one directional record.
double directional_power(const TrackScan &scan, std::size_t position, int azimuth_deg,
                         const ThresholdPolicy &policy = {});

/// Omnidirectional received power at one track position: linear-power sum
/// of the thresholded directional integrals over all available azimuth
/// angles. Missing angles contribute zero.
double synthesize_omni(const TrackScan &scan, std::size_t position,
                       const ThresholdPolicy &policy = {});

/// Pointing selector for track extraction.
struct TrackMode {
    bool omni = true;
    int azimuth_deg = 0;

    static TrackMode omnidirectional() { return {true, 0}; }
    static TrackMode directional(int azimuth_deg) { return {false, azimuth_deg}; }
};

std::string mode_name(const TrackMode &mode);

/// Reduces a scan to the amplitude track for the requested pointing.
/// Every position must yield strictly positive power; a zero-power or
/// missing position signals a no-signal pointing angle.
AmplitudeTrack scan_to_amplitude_track(const TrackScan &scan, const TrackMode &mode,
                                       const ThresholdPolicy &policy = {});

} // namespace smallscale

#endif

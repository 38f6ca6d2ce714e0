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

#ifndef SMALLSCALE_MODEL_HPP
#define SMALLSCALE_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smallscale {

/// Speed of light expressed in cm * GHz, so wavelength_cm = this / f_GHz.
inline constexpr double kSpeedOfLightCmGhz = 29.9792458;

double db_to_linear(double value_db);
double linear_to_db(double ratio);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

enum class Environment { Los, Nlos };
enum class Orientation { OrthogonalToTr, ParallelToTr };

/// Carrier frequency plus derived wavelength. Distances are carried in
/// wavelength units throughout the library; cm values are presentation
/// conversions made through this type.
struct CarrierConfig {
    double frequency_ghz = 73.5;

    double wavelength_cm() const { return kSpeedOfLightCmGhz / frequency_ghz; }
    void validate() const;
};

/// Linear antenna track: equally spaced positions, spacing in wavelengths.
struct TrackGeometry {
    std::size_t num_positions = 175;
    double spacing_wavelengths = 0.5;
    Orientation orientation = Orientation::OrthogonalToTr;

    double span_wavelengths() const {
        return static_cast<double>(num_positions - 1) * spacing_wavelengths;
    }
    void validate() const;
};

/// One power delay profile: uniformly binned linear powers in mW plus an
/// optional measured noise floor.
struct Pdp {
    double delay_step_ns = 2.0;
    std::vector<double> powers_mw;
    std::optional<double> noise_floor_dbm;

    void validate() const;
    double peak_mw() const;
};

/// The full measurement unit: per-position, per-azimuth PDPs collected
/// along one track. Missing (position, azimuth) entries are allowed; a
/// pointing angle with no signal simply has no records.
struct TrackScan {
    CarrierConfig carrier;
    TrackGeometry geometry;
    Environment environment = Environment::Los;
    std::optional<double> noise_floor_dbm;
    std::map<std::pair<std::size_t, int>, Pdp> records; // key: (position, azimuth_deg)

    void validate() const;

    /// Sorted distinct azimuth angles present in the records.
    std::vector<int> azimuths() const;

    /// Record lookup; nullptr when the entry is absent.
    const Pdp *find(std::size_t position, int azimuth_deg) const;
};

/// Received-signal voltage amplitudes (sqrt mW) along the track.
struct AmplitudeTrack {
    std::vector<double> amplitudes;
    double spacing_wavelengths = 0.5;
    std::string label;

    void validate() const;
};

/// Signal level about the mean: r_i = 20*log10(A_i / mean(A)), where the
/// mean is the arithmetic mean of the linear amplitudes.
std::vector<double> amplitude_rel_db(const AmplitudeTrack &track);

const char *environment_name(Environment e);
const char *orientation_name(Orientation o);
Environment parse_environment(const std::string &s);
Orientation parse_orientation(const std::string &s);

} // namespace smallscale

#endif

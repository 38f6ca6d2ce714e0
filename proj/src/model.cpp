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

#include "smallscale/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "smallscale/errors.hpp"

namespace smallscale {

double db_to_linear(double value_db) {
    if (!std::isfinite(value_db))
        throw UsageError("db_to_linear: value must be finite");
    return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double ratio) {
    if (!(ratio > 0.0))
        throw UsageError("linear_to_db: ratio must be positive");
    return 10.0 * std::log10(ratio);
}

double dbm_to_mw(double dbm) { return db_to_linear(dbm); }

double mw_to_dbm(double mw) { return linear_to_db(mw); }

void CarrierConfig::validate() const {
    if (!(frequency_ghz > 0.0) || !std::isfinite(frequency_ghz))
        throw ValidationError("carrier: frequency_ghz must be positive and finite");
}

void TrackGeometry::validate() const {
    // Single-position scan documents are legal; operations that need
    // position pairs enforce their own length floors.
    if (num_positions < 1)
        throw ValidationError("geometry: num_positions must be at least 1");
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw ValidationError("geometry: spacing_wavelengths must be positive");
}

void Pdp::validate() const {
    if (powers_mw.empty())
        throw ValidationError("pdp: powers must be non-empty");
    if (!(delay_step_ns > 0.0))
        throw ValidationError("pdp: delay_step_ns must be positive");
    for (double p : powers_mw)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ValidationError("pdp: powers must be finite and non-negative");
    if (noise_floor_dbm && !std::isfinite(*noise_floor_dbm))
        throw ValidationError("pdp: noise_floor_dbm must be finite");
}

double Pdp::peak_mw() const { return *std::max_element(powers_mw.begin(), powers_mw.end()); }

void TrackScan::validate() const {
    carrier.validate();
    geometry.validate();
    std::set<int> angles;
    for (const auto &[key, pdp] : records) {
        const auto &[position, azimuth] = key;
        if (position >= geometry.num_positions)
            throw ValidationError("scan: record position_index " + std::to_string(position) +
                                  " out of range [0, " +
                                  std::to_string(geometry.num_positions) + ")");
        if (azimuth < 0 || azimuth >= 360)
            throw ValidationError("scan: azimuth_deg " + std::to_string(azimuth) +
                                  " out of range [0, 360)");
        angles.insert(azimuth);
        pdp.validate();
    }
    if (angles.size() > 6)
        throw ValidationError("scan: more than 6 distinct azimuth angles");
    // Pointing angles step through the azimuth plane in 60 degree increments.
    if (!angles.empty()) {
        const int residue = *angles.begin() % 60;
        for (int a : angles)
            if (a % 60 != residue)
                throw ValidationError("scan: azimuth angles must be separated by "
                                      "multiples of 60 degrees");
    }
}

std::vector<int> TrackScan::azimuths() const {
    std::set<int> angles;
    for (const auto &[key, pdp] : records)
        angles.insert(key.second);
    return {angles.begin(), angles.end()};
}

const Pdp *TrackScan::find(std::size_t position, int azimuth_deg) const {
    const auto it = records.find({position, azimuth_deg});
    return it == records.end() ? nullptr : &it->second;
}

void AmplitudeTrack::validate() const {
    if (amplitudes.empty())
        throw ValidationError("track: amplitudes must be non-empty");
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw ValidationError("track: spacing_wavelengths must be positive");
    for (double a : amplitudes)
        if (!(a > 0.0) || !std::isfinite(a))
            throw ValidationError("track: amplitudes must be positive (zero amplitude "
                                  "means no signal)");
}

std::vector<double> amplitude_rel_db(const AmplitudeTrack &track) {
    track.validate();
    double mean = 0.0;
    for (double a : track.amplitudes)
        mean += a;
    mean /= static_cast<double>(track.amplitudes.size());
    std::vector<double> out;
    out.reserve(track.amplitudes.size());
    for (double a : track.amplitudes)
        out.push_back(20.0 * std::log10(a / mean));
    return out;
}

const char *environment_name(Environment e) {
    return e == Environment::Los ? "LOS" : "NLOS";
}

const char *orientation_name(Orientation o) {
    return o == Orientation::OrthogonalToTr ? "orthogonal" : "parallel";
}

Environment parse_environment(const std::string &s) {
    if (s == "LOS")
        return Environment::Los;
    if (s == "NLOS")
        return Environment::Nlos;
    throw ValidationError("environment must be \"LOS\" or \"NLOS\", got \"" + s + "\"");
}

Orientation parse_orientation(const std::string &s) {
    if (s == "orthogonal")
        return Orientation::OrthogonalToTr;
    if (s == "parallel")
        return Orientation::ParallelToTr;
    throw ValidationError("orientation must be \"orthogonal\" or \"parallel\", got \"" + s +
                          "\"");
}

} // namespace smallscale

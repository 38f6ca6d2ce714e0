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

#ifndef SMALLSCALE_IO_HPP
#define SMALLSCALE_IO_HPP

#include <string>
#include <variant>

#include "smallscale/autocorr.hpp"
#include "smallscale/fading.hpp"
#include "smallscale/model.hpp"
#include "smallscale/pdp.hpp"
#include "smallscale/synth.hpp"

namespace smallscale::io {

/// Amplitude track plus the carrier it was measured or generated at
/// (needed to express lags in cm).
struct TrackDocument {
    AmplitudeTrack track;
    CarrierConfig carrier;
};

// Scan and track documents are JSON ("version": "v1"); powers are stored
// in dBm for auditability and converted to linear mW on load.
TrackScan load_scan(const std::string &path);
void save_scan(const TrackScan &scan, const std::string &path);

TrackDocument load_track(const std::string &path);
void save_track(const TrackDocument &doc, const std::string &path);

/// Generator recipe files: kind "track_spec" or "scan_spec".
struct TrackSynthFile {
    SynthSpec spec;
    CarrierConfig carrier;
};

struct ScanSynthFile {
    MultipathSpec spec;
    TrackGeometry geometry;
    CarrierConfig carrier;
    Environment environment = Environment::Los;
};

using SynthFile = std::variant<TrackSynthFile, ScanSynthFile>;

SynthFile load_synth_spec(const std::string &path);

/// Runs a generator recipe and writes the produced track or scan document.
void run_synth_spec(const SynthFile &file, std::uint64_t seed, const std::string &out_path);

/// Pointing selector syntax used by files and the command line:
/// "omni" or "az:<degrees>".
TrackMode parse_mode(const std::string &text);

// CSV reports (header row, '.' decimal separator, LF newlines). Constant
// fitted parameters are repeated on every row so each file is one
// plot-ready table with a fixed column count.

/// Columns: r_db, ecdf, cdf_ricean, cdf_lognormal_db, cdf_rayleigh,
/// ricean_k_db, ricean_mmse, ricean_ks, lognormal_sigma_db,
/// lognormal_mmse, lognormal_ks, rayleigh_mmse, rayleigh_ks, best_family.
void write_fading_report(const std::string &path, std::span<const double> r_db,
                         const std::vector<FadingFit> &ranked_fits);

/// Columns: lag_wavelengths, lag_cm, rho_empirical, rho_model, a, b, T, d,
/// d_empirical, extrapolated. T and d_empirical are empty when absent.
void write_autocorr_report(const std::string &path, const AutocorrSeries &series,
                           const DampedCosParams &params,
                           std::optional<double> d_empirical,
                           const CarrierConfig &carrier);

/// Columns: pointing, position_index, power_mw, amplitude. One row per
/// (pointing, position).
void write_process_report(const std::string &path, const TrackScan &scan,
                          const std::vector<TrackMode> &modes,
                          const ThresholdPolicy &policy);

} // namespace smallscale::io

#endif

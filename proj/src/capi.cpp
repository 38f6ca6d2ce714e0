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

#include "smallscale/smallscale.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include "smallscale/autocorr.hpp"
#include "smallscale/errors.hpp"
#include "smallscale/fading.hpp"
#include "smallscale/io.hpp"
#include "smallscale/model.hpp"
#include "smallscale/pdp.hpp"
#include "smallscale/synth.hpp"

using namespace smallscale;

extern "C" {

struct ss_scan {
    TrackScan value;
};

struct ss_track {
    io::TrackDocument value;
};

struct ss_fading {
    std::vector<FadingFit> ranked;
};

struct ss_autocorr {
    AutocorrSeries series;
    std::optional<DampedCosParams> fit;
    std::optional<double> d_empirical;
};

} // extern "C"

namespace {

thread_local std::string g_last_error;

template <class F> ss_status guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return SS_OK;
    } catch (const UsageError &e) {
        g_last_error = e.what();
        return SS_ERR_USAGE;
    } catch (const ValidationError &e) {
        g_last_error = e.what();
        return SS_ERR_VALIDATION;
    } catch (const IoError &e) {
        g_last_error = e.what();
        return SS_ERR_VALIDATION;
    } catch (const DegenerateError &e) {
        g_last_error = e.what();
        return SS_ERR_DEGENERATE;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return SS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SS_ERR_INTERNAL;
    }
}

void require_arg(bool condition, const char *message) {
    if (!condition)
        throw UsageError(message);
}

template <class T>
ss_status fill_array(const std::vector<T> &values, double *out, int capacity,
                     const char *what) {
    return guarded([&] {
        require_arg(out != nullptr, "output buffer is null");
        require_arg(capacity >= static_cast<int>(values.size()), what);
        for (std::size_t i = 0; i < values.size(); ++i)
            out[i] = static_cast<double>(values[i]);
    });
}

} // namespace

extern "C" {

const char *ss_version(void) { return "0.1.0"; }

const char *ss_status_name(ss_status status) {
    switch (status) {
    case SS_OK:
        return "ok";
    case SS_ERR_INTERNAL:
        return "internal error";
    case SS_ERR_USAGE:
        return "usage error";
    case SS_ERR_VALIDATION:
        return "validation error";
    case SS_ERR_DEGENERATE:
        return "degenerate input";
    }
    return "unknown status";
}

const char *ss_last_error(void) { return g_last_error.c_str(); }

/* ---- scans ---------------------------------------------------------- */

ss_status ss_scan_load(const char *path, ss_scan **out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "ss_scan_load: null argument");
        *out = new ss_scan{io::load_scan(path)};
    });
}

ss_status ss_scan_save(const ss_scan *scan, const char *path) {
    return guarded([&] {
        require_arg(scan != nullptr && path != nullptr, "ss_scan_save: null argument");
        io::save_scan(scan->value, path);
    });
}

void ss_scan_free(ss_scan *scan) { delete scan; }

int ss_scan_num_positions(const ss_scan *scan) {
    return scan == nullptr ? 0 : static_cast<int>(scan->value.geometry.num_positions);
}

double ss_scan_spacing_wavelengths(const ss_scan *scan) {
    return scan == nullptr ? 0.0 : scan->value.geometry.spacing_wavelengths;
}

double ss_scan_carrier_ghz(const ss_scan *scan) {
    return scan == nullptr ? 0.0 : scan->value.carrier.frequency_ghz;
}

const char *ss_scan_environment(const ss_scan *scan) {
    return scan == nullptr ? "" : environment_name(scan->value.environment);
}

int ss_scan_num_angles(const ss_scan *scan) {
    return scan == nullptr ? 0 : static_cast<int>(scan->value.azimuths().size());
}

ss_status ss_scan_angles(const ss_scan *scan, int *out, int capacity) {
    return guarded([&] {
        require_arg(scan != nullptr && out != nullptr, "ss_scan_angles: null argument");
        const std::vector<int> angles = scan->value.azimuths();
        require_arg(capacity >= static_cast<int>(angles.size()),
                    "ss_scan_angles: buffer too small");
        for (std::size_t i = 0; i < angles.size(); ++i)
            out[i] = angles[i];
    });
}

ss_status ss_scan_extract_track(const ss_scan *scan, const char *mode, double peak_down_db,
                                double noise_up_db, ss_track **out) {
    return guarded([&] {
        require_arg(scan != nullptr && mode != nullptr && out != nullptr,
                    "ss_scan_extract_track: null argument");
        const TrackMode parsed = io::parse_mode(mode);
        const ThresholdPolicy policy{peak_down_db, noise_up_db};
        *out = new ss_track{
            {scan_to_amplitude_track(scan->value, parsed, policy), scan->value.carrier}};
    });
}

/* ---- tracks --------------------------------------------------------- */

ss_status ss_track_load(const char *path, ss_track **out) {
    return guarded([&] {
        require_arg(path != nullptr && out != nullptr, "ss_track_load: null argument");
        *out = new ss_track{io::load_track(path)};
    });
}

ss_status ss_track_save(const ss_track *track, const char *path) {
    return guarded([&] {
        require_arg(track != nullptr && path != nullptr, "ss_track_save: null argument");
        io::save_track(track->value, path);
    });
}

void ss_track_free(ss_track *track) { delete track; }

ss_status ss_track_create(const double *amplitudes, int count, double spacing_wavelengths,
                          double carrier_ghz, const char *label, ss_track **out) {
    return guarded([&] {
        require_arg(amplitudes != nullptr && out != nullptr, "ss_track_create: null argument");
        require_arg(count > 0, "ss_track_create: count must be positive");
        io::TrackDocument doc;
        doc.track.amplitudes.assign(amplitudes, amplitudes + count);
        doc.track.spacing_wavelengths = spacing_wavelengths;
        doc.track.label = label == nullptr ? "" : label;
        doc.carrier.frequency_ghz = carrier_ghz;
        doc.carrier.validate();
        doc.track.validate();
        *out = new ss_track{std::move(doc)};
    });
}

int ss_track_length(const ss_track *track) {
    return track == nullptr ? 0 : static_cast<int>(track->value.track.amplitudes.size());
}

double ss_track_spacing_wavelengths(const ss_track *track) {
    return track == nullptr ? 0.0 : track->value.track.spacing_wavelengths;
}

double ss_track_carrier_ghz(const ss_track *track) {
    return track == nullptr ? 0.0 : track->value.carrier.frequency_ghz;
}

const char *ss_track_label(const ss_track *track) {
    return track == nullptr ? "" : track->value.track.label.c_str();
}

ss_status ss_track_amplitudes(const ss_track *track, double *out, int capacity) {
    if (track == nullptr) {
        g_last_error = "ss_track_amplitudes: null track";
        return SS_ERR_USAGE;
    }
    return fill_array(track->value.track.amplitudes, out, capacity,
                      "ss_track_amplitudes: buffer too small");
}

ss_status ss_track_rel_db(const ss_track *track, double *out, int capacity) {
    return guarded([&] {
        require_arg(track != nullptr && out != nullptr, "ss_track_rel_db: null argument");
        const std::vector<double> rel = amplitude_rel_db(track->value.track);
        require_arg(capacity >= static_cast<int>(rel.size()),
                    "ss_track_rel_db: buffer too small");
        for (std::size_t i = 0; i < rel.size(); ++i)
            out[i] = rel[i];
    });
}

/* ---- fading fits ----------------------------------------------------- */

ss_status ss_fading_fit(const ss_track *track, ss_fading **out) {
    return guarded([&] {
        require_arg(track != nullptr && out != nullptr, "ss_fading_fit: null argument");
        const std::vector<double> rel = amplitude_rel_db(track->value.track);
        *out = new ss_fading{select_best_family(rel)};
    });
}

void ss_fading_free(ss_fading *fits) { delete fits; }

int ss_fading_count(const ss_fading *fits) {
    return fits == nullptr ? 0 : static_cast<int>(fits->ranked.size());
}

static const FadingFit *fit_at(const ss_fading *fits, int rank) {
    if (fits == nullptr || rank < 0 || rank >= static_cast<int>(fits->ranked.size()))
        return nullptr;
    return &fits->ranked[static_cast<std::size_t>(rank)];
}

const char *ss_fading_family(const ss_fading *fits, int rank) {
    const FadingFit *fit = fit_at(fits, rank);
    return fit == nullptr ? "" : family_name(fit->family.kind);
}

double ss_fading_param(const ss_fading *fits, int rank) {
    const FadingFit *fit = fit_at(fits, rank);
    return fit == nullptr ? std::numeric_limits<double>::quiet_NaN() : fit->family.parameter();
}

double ss_fading_mmse(const ss_fading *fits, int rank) {
    const FadingFit *fit = fit_at(fits, rank);
    return fit == nullptr ? std::numeric_limits<double>::quiet_NaN() : fit->fit_error;
}

double ss_fading_ks(const ss_fading *fits, int rank) {
    const FadingFit *fit = fit_at(fits, rank);
    return fit == nullptr ? std::numeric_limits<double>::quiet_NaN() : fit->ks_stat;
}

ss_status ss_k_factor_dominant(const double *path_powers_mw, int count, double *out) {
    return guarded([&] {
        require_arg(path_powers_mw != nullptr && out != nullptr,
                    "ss_k_factor_dominant: null argument");
        require_arg(count >= 0, "ss_k_factor_dominant: negative count");
        *out = estimate_k_dominant(
            {path_powers_mw, static_cast<std::size_t>(count)});
    });
}

/* ---- spatial autocorrelation ----------------------------------------- */

ss_status ss_autocorr_compute(const ss_track *track, double max_lag_wavelengths,
                              int min_pairs, ss_autocorr **out) {
    return guarded([&] {
        require_arg(track != nullptr && out != nullptr, "ss_autocorr_compute: null argument");
        *out = new ss_autocorr{
            autocorrelation(track->value.track, max_lag_wavelengths, min_pairs), {}, {}};
    });
}

void ss_autocorr_free(ss_autocorr *ac) { delete ac; }

int ss_autocorr_num_lags(const ss_autocorr *ac) {
    return ac == nullptr ? 0 : static_cast<int>(ac->series.rho.size());
}

ss_status ss_autocorr_values(const ss_autocorr *ac, double *lags_wavelengths, double *rho,
                             int capacity) {
    return guarded([&] {
        require_arg(ac != nullptr && lags_wavelengths != nullptr && rho != nullptr,
                    "ss_autocorr_values: null argument");
        require_arg(capacity >= static_cast<int>(ac->series.rho.size()),
                    "ss_autocorr_values: buffer too small");
        for (std::size_t i = 0; i < ac->series.rho.size(); ++i) {
            lags_wavelengths[i] = ac->series.lags_wavelengths[i];
            rho[i] = ac->series.rho[i];
        }
    });
}

ss_status ss_autocorr_fit(ss_autocorr *ac, int force_a_zero, ss_damped_cos *out) {
    return guarded([&] {
        require_arg(ac != nullptr && out != nullptr, "ss_autocorr_fit: null argument");
        const DampedCosParams params = fit_damped_cos(ac->series, force_a_zero != 0);
        ac->fit = params;
        ac->d_empirical = decorrelation_empirical(ac->series);
        *out = ss_damped_cos{};
        out->a = params.a;
        out->b = params.b;
        out->has_period = params.period.has_value() ? 1 : 0;
        out->period = params.period.value_or(std::numeric_limits<double>::quiet_NaN());
        out->distance = params.distance;
        out->has_distance_empirical = ac->d_empirical.has_value() ? 1 : 0;
        out->distance_empirical =
            ac->d_empirical.value_or(std::numeric_limits<double>::quiet_NaN());
        out->extrapolated = params.extrapolated ? 1 : 0;
    });
}

/* ---- generation ------------------------------------------------------ */

ss_status ss_generate(const char *spec_path, uint64_t seed, const char *out_path) {
    return guarded([&] {
        require_arg(spec_path != nullptr && out_path != nullptr, "ss_generate: null argument");
        io::run_synth_spec(io::load_synth_spec(spec_path), seed, out_path);
    });
}

/* ---- CSV reports ------------------------------------------------------ */

ss_status ss_report_fading_csv(const ss_track *track, const char *path) {
    return guarded([&] {
        require_arg(track != nullptr && path != nullptr,
                    "ss_report_fading_csv: null argument");
        const std::vector<double> rel = amplitude_rel_db(track->value.track);
        io::write_fading_report(path, rel, select_best_family(rel));
    });
}

ss_status ss_report_autocorr_csv(const ss_track *track, double max_lag_wavelengths,
                                 int min_pairs, int force_a_zero, const char *path) {
    return guarded([&] {
        require_arg(track != nullptr && path != nullptr,
                    "ss_report_autocorr_csv: null argument");
        const AutocorrSeries series =
            autocorrelation(track->value.track, max_lag_wavelengths, min_pairs);
        const DampedCosParams params = fit_damped_cos(series, force_a_zero != 0);
        io::write_autocorr_report(path, series, params, decorrelation_empirical(series),
                                  track->value.carrier);
    });
}

ss_status ss_report_process_csv(const ss_scan *scan, const char *mode, double peak_down_db,
                                double noise_up_db, const char *path) {
    return guarded([&] {
        require_arg(scan != nullptr && path != nullptr,
                    "ss_report_process_csv: null argument");
        std::vector<TrackMode> modes;
        if (mode == nullptr || std::strlen(mode) == 0) {
            modes.push_back(TrackMode::omnidirectional());
            for (int azimuth : scan->value.azimuths())
                modes.push_back(TrackMode::directional(azimuth));
        } else {
            modes.push_back(io::parse_mode(mode));
        }
        io::write_process_report(path, scan->value, modes,
                                 ThresholdPolicy{peak_down_db, noise_up_db});
    });
}

} // extern "C"

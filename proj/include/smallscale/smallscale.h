/* SPDX-License-Identifier: Apache-2.0
 *
 * smallscale - spatial fading and autocorrelation statistics for
 * linear-track channel measurements
 * Copyright (C) 2026 smallscale contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C API of the smallscale shared library. All objects are opaque handles
 * created and destroyed through this interface; every fallible call
 * returns an ss_status and leaves a human-readable message retrievable
 * with ss_last_error() on failure. The status values double as the CLI
 * exit codes.
 */

#ifndef SMALLSCALE_SMALLSCALE_H
#define SMALLSCALE_SMALLSCALE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
    SS_OK = 0,
    SS_ERR_INTERNAL = 1,   /* unexpected failure                     */
    SS_ERR_USAGE = 2,      /* bad arguments to an API call           */
    SS_ERR_VALIDATION = 3, /* parse error, invariant violation, I/O  */
    SS_ERR_DEGENERATE = 4  /* numeric or statistical failure         */
} ss_status;

const char *ss_version(void);
const char *ss_status_name(ss_status status);

/* Message describing the most recent failure on this thread. Valid until
 * the next API call on the same thread. */
const char *ss_last_error(void);

/* Default double-threshold parameters (dB). */
#define SS_DEFAULT_PEAK_DOWN_DB 20.0
#define SS_DEFAULT_NOISE_UP_DB 5.0

typedef struct ss_scan ss_scan;         /* per-position, per-angle PDP set */
typedef struct ss_track ss_track;       /* amplitude track                 */
typedef struct ss_fading ss_fading;     /* ranked fading fits              */
typedef struct ss_autocorr ss_autocorr; /* correlation series + model fit  */

/* ---- scans ---------------------------------------------------------- */

ss_status ss_scan_load(const char *path, ss_scan **out);
ss_status ss_scan_save(const ss_scan *scan, const char *path);
void ss_scan_free(ss_scan *scan);

int ss_scan_num_positions(const ss_scan *scan);
double ss_scan_spacing_wavelengths(const ss_scan *scan);
double ss_scan_carrier_ghz(const ss_scan *scan);
const char *ss_scan_environment(const ss_scan *scan);
int ss_scan_num_angles(const ss_scan *scan);

/* Fills out[0..num_angles) with the sorted distinct azimuth angles. */
ss_status ss_scan_angles(const ss_scan *scan, int *out, int capacity);

/* Reduces the scan to an amplitude track. mode is "omni" or "az:<deg>". */
ss_status ss_scan_extract_track(const ss_scan *scan, const char *mode,
                                double peak_down_db, double noise_up_db,
                                ss_track **out);

/* ---- tracks --------------------------------------------------------- */

ss_status ss_track_load(const char *path, ss_track **out);
ss_status ss_track_save(const ss_track *track, const char *path);
void ss_track_free(ss_track *track);

/* Builds a track from amplitude values (sqrt mW, all > 0). */
ss_status ss_track_create(const double *amplitudes, int count, double spacing_wavelengths,
                          double carrier_ghz, const char *label, ss_track **out);

int ss_track_length(const ss_track *track);
double ss_track_spacing_wavelengths(const ss_track *track);
double ss_track_carrier_ghz(const ss_track *track);
const char *ss_track_label(const ss_track *track);
ss_status ss_track_amplitudes(const ss_track *track, double *out, int capacity);

/* Signal level about the mean, in dB. */
ss_status ss_track_rel_db(const ss_track *track, double *out, int capacity);

/* ---- fading fits ----------------------------------------------------- */

/* Fits all three candidate families to the track's dB-about-mean levels
 * and ranks them by ascending KS statistic. */
ss_status ss_fading_fit(const ss_track *track, ss_fading **out);
void ss_fading_free(ss_fading *fits);

int ss_fading_count(const ss_fading *fits);
/* rank 0 is the best fit. */
const char *ss_fading_family(const ss_fading *fits, int rank);
/* K (dB) for ricean, sigma (dB) for lognormal_db, NaN for rayleigh. */
double ss_fading_param(const ss_fading *fits, int rank);
double ss_fading_mmse(const ss_fading *fits, int rank);
double ss_fading_ks(const ss_fading *fits, int rank);

/* Dominant-path K factor (dB) from linear path powers. Yields +inf when
 * the residual power is zero. */
ss_status ss_k_factor_dominant(const double *path_powers_mw, int count, double *out);

/* ---- spatial autocorrelation ----------------------------------------- */

/* max_lag_wavelengths <= 0 selects min(30, largest lag with min_pairs
 * overlapping pairs); min_pairs <= 0 selects the default of 100. */
ss_status ss_autocorr_compute(const ss_track *track, double max_lag_wavelengths,
                              int min_pairs, ss_autocorr **out);
void ss_autocorr_free(ss_autocorr *ac);

int ss_autocorr_num_lags(const ss_autocorr *ac);
ss_status ss_autocorr_values(const ss_autocorr *ac, double *lags_wavelengths, double *rho,
                             int capacity);

typedef struct ss_damped_cos {
    double a;                  /* rad / wavelength                  */
    double b;                  /* 1 / wavelength                    */
    double period;             /* T = 2*pi/a (valid if has_period)  */
    double distance;           /* d = 1/b, wavelengths              */
    double distance_empirical; /* 1/e crossing (valid if has_...)   */
    int has_period;
    int has_distance_empirical;
    int extrapolated; /* d exceeds the fitted lag span */
} ss_damped_cos;

/* MMSE fit of cos(a*dx)*exp(-b*dx) to the computed series. */
ss_status ss_autocorr_fit(ss_autocorr *ac, int force_a_zero, ss_damped_cos *out);

/* ---- generation ------------------------------------------------------ */

/* Runs a generator recipe file ("track_spec" or "scan_spec") and writes
 * the produced document. The seed overrides the one in the file. */
ss_status ss_generate(const char *spec_path, uint64_t seed, const char *out_path);

/* ---- CSV reports ------------------------------------------------------ */

ss_status ss_report_fading_csv(const ss_track *track, const char *path);

ss_status ss_report_autocorr_csv(const ss_track *track, double max_lag_wavelengths,
                                 int min_pairs, int force_a_zero, const char *path);

/* mode NULL or "" reports omni plus every angle present in the scan. */
ss_status ss_report_process_csv(const ss_scan *scan, const char *mode,
                                double peak_down_db, double noise_up_db,
                                const char *path);

#ifdef __cplusplus
}
#endif

#endif /* SMALLSCALE_SMALLSCALE_H */

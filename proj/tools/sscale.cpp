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
//
// sscale: command-line front end. Links only the C API of the shared
// library; all domain work happens behind the opaque handles.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <smallscale/smallscale.h>

namespace {

int fail(ss_status status) {
    std::fprintf(stderr, "sscale: error: %s\n", ss_last_error());
    return static_cast<int>(status);
}

struct ScanDeleter {
    void operator()(ss_scan *p) const { ss_scan_free(p); }
};
struct TrackDeleter {
    void operator()(ss_track *p) const { ss_track_free(p); }
};
struct FadingDeleter {
    void operator()(ss_fading *p) const { ss_fading_free(p); }
};
struct AutocorrDeleter {
    void operator()(ss_autocorr *p) const { ss_autocorr_free(p); }
};

using ScanPtr = std::unique_ptr<ss_scan, ScanDeleter>;
using TrackPtr = std::unique_ptr<ss_track, TrackDeleter>;
using FadingPtr = std::unique_ptr<ss_fading, FadingDeleter>;
using AutocorrPtr = std::unique_ptr<ss_autocorr, AutocorrDeleter>;

void print_fading_summary(const ss_fading *fits) {
    for (int rank = 0; rank < ss_fading_count(fits); ++rank) {
        const std::string family = ss_fading_family(fits, rank);
        std::printf("  rank=%d family=%s", rank + 1, family.c_str());
        const double param = ss_fading_param(fits, rank);
        if (family == "ricean")
            std::printf(" k_db=%.6g", param);
        else if (family == "lognormal_db")
            std::printf(" sigma_db=%.6g", param);
        std::printf(" mmse=%.6g ks=%.6g\n", ss_fading_mmse(fits, rank),
                    ss_fading_ks(fits, rank));
    }
}

void print_autocorr_summary(const ss_damped_cos &model) {
    std::printf("  a=%.6g b=%.6g", model.a, model.b);
    if (model.has_period)
        std::printf(" T_wavelengths=%.6g", model.period);
    else
        std::printf(" T_wavelengths=-");
    std::printf(" d_wavelengths=%.6g", model.distance);
    if (model.has_distance_empirical)
        std::printf(" d_empirical_wavelengths=%.6g", model.distance_empirical);
    else
        std::printf(" d_empirical_wavelengths=-");
    std::printf(" extrapolated=%d\n", model.extrapolated);
}

std::string angle_tag(int azimuth_deg) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "az%03d", azimuth_deg);
    return buffer;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"small-scale spatial fading and autocorrelation toolkit"};
    app.require_subcommand(1);

    // process
    std::string process_scan, process_mode, process_out = "process.csv";
    double process_peak_down = SS_DEFAULT_PEAK_DOWN_DB;
    double process_noise_up = SS_DEFAULT_NOISE_UP_DB;
    auto *process = app.add_subcommand(
        "process", "Threshold and integrate a scan into per-position powers/amplitudes");
    process->add_option("scan", process_scan, "scan document (JSON)")->required();
    process->add_option("--mode", process_mode, "omni or az:<deg> (default: all pointings)");
    process->add_option("--peak-down", process_peak_down, "peak threshold depth in dB");
    process->add_option("--noise-up", process_noise_up, "noise threshold height in dB");
    process->add_option("--out", process_out, "output CSV path");

    // fit-fading
    std::string fading_track, fading_out = "fading.csv";
    auto *fit_fading = app.add_subcommand(
        "fit-fading", "Fit Ricean / log-normal / Rayleigh marginals to a track");
    fit_fading->add_option("track", fading_track, "track document (JSON)")->required();
    fit_fading->add_option("--out", fading_out, "output CSV path");

    // fit-autocorr
    std::string ac_track, ac_out = "autocorr.csv";
    double ac_max_lag = 0.0;
    int ac_min_pairs = 0;
    bool ac_force_a_zero = false;
    auto *fit_autocorr = app.add_subcommand(
        "fit-autocorr", "Spatial autocorrelation and damped-oscillation fit of a track");
    fit_autocorr->add_option("track", ac_track, "track document (JSON)")->required();
    fit_autocorr->add_option("--max-lag", ac_max_lag,
                             "lag ceiling in wavelengths (default: min(30, pair limit))");
    fit_autocorr->add_option("--min-pairs", ac_min_pairs,
                             "minimum overlapping pairs per lag (default 100)");
    fit_autocorr->add_flag("--force-a-zero", ac_force_a_zero,
                           "restrict the fit to a pure exponential (a = 0)");
    fit_autocorr->add_option("--out", ac_out, "output CSV path");

    // generate
    std::string gen_spec, gen_out = "generated.json";
    std::uint64_t gen_seed = 0;
    auto *generate = app.add_subcommand(
        "generate", "Run a generator recipe (track_spec or scan_spec) into a document");
    generate->add_option("spec", gen_spec, "generator recipe (JSON)")->required();
    generate->add_option("--seed", gen_seed, "random seed (default 0)");
    generate->add_option("--out", gen_out, "output document path");

    // report
    std::string report_scan, report_out = "report";
    double report_peak_down = SS_DEFAULT_PEAK_DOWN_DB;
    double report_noise_up = SS_DEFAULT_NOISE_UP_DB;
    double report_max_lag = 0.0;
    int report_min_pairs = 0;
    bool report_force_a_zero = false;
    auto *report = app.add_subcommand(
        "report", "Full chain: fading and autocorrelation reports for omni and each angle");
    report->add_option("scan", report_scan, "scan document (JSON)")->required();
    report->add_option("--out", report_out, "output path prefix");
    report->add_option("--peak-down", report_peak_down, "peak threshold depth in dB");
    report->add_option("--noise-up", report_noise_up, "noise threshold height in dB");
    report->add_option("--max-lag", report_max_lag, "lag ceiling in wavelengths");
    report->add_option("--min-pairs", report_min_pairs, "minimum overlapping pairs per lag");
    report->add_flag("--force-a-zero", report_force_a_zero,
                     "restrict autocorrelation fits to pure exponentials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // nonzero parse outcomes are usage errors
    }

    if (*process) {
        ss_scan *scan = nullptr;
        if (ss_status st = ss_scan_load(process_scan.c_str(), &scan); st != SS_OK)
            return fail(st);
        ScanPtr guard(scan);
        if (ss_status st = ss_report_process_csv(scan, process_mode.c_str(),
                                                 process_peak_down, process_noise_up,
                                                 process_out.c_str());
            st != SS_OK)
            return fail(st);
        std::printf("wrote %s\n", process_out.c_str());
        return 0;
    }

    if (*fit_fading) {
        ss_track *track = nullptr;
        if (ss_status st = ss_track_load(fading_track.c_str(), &track); st != SS_OK)
            return fail(st);
        TrackPtr guard(track);
        ss_fading *fits = nullptr;
        if (ss_status st = ss_fading_fit(track, &fits); st != SS_OK)
            return fail(st);
        FadingPtr fits_guard(fits);
        if (ss_status st = ss_report_fading_csv(track, fading_out.c_str()); st != SS_OK)
            return fail(st);
        std::printf("fit-fading %s (n=%d)\n", fading_track.c_str(), ss_track_length(track));
        print_fading_summary(fits);
        std::printf("wrote %s\n", fading_out.c_str());
        return 0;
    }

    if (*fit_autocorr) {
        ss_track *track = nullptr;
        if (ss_status st = ss_track_load(ac_track.c_str(), &track); st != SS_OK)
            return fail(st);
        TrackPtr guard(track);
        ss_autocorr *ac = nullptr;
        if (ss_status st = ss_autocorr_compute(track, ac_max_lag, ac_min_pairs, &ac);
            st != SS_OK)
            return fail(st);
        AutocorrPtr ac_guard(ac);
        ss_damped_cos model{};
        if (ss_status st = ss_autocorr_fit(ac, ac_force_a_zero ? 1 : 0, &model); st != SS_OK)
            return fail(st);
        if (ss_status st = ss_report_autocorr_csv(track, ac_max_lag, ac_min_pairs,
                                                  ac_force_a_zero ? 1 : 0, ac_out.c_str());
            st != SS_OK)
            return fail(st);
        std::printf("fit-autocorr %s (lags=%d)\n", ac_track.c_str(), ss_autocorr_num_lags(ac));
        print_autocorr_summary(model);
        std::printf("wrote %s\n", ac_out.c_str());
        return 0;
    }

    if (*generate) {
        if (ss_status st = ss_generate(gen_spec.c_str(), gen_seed, gen_out.c_str());
            st != SS_OK)
            return fail(st);
        std::printf("wrote %s\n", gen_out.c_str());
        return 0;
    }

    if (*report) {
        ss_scan *scan = nullptr;
        if (ss_status st = ss_scan_load(report_scan.c_str(), &scan); st != SS_OK)
            return fail(st);
        ScanPtr guard(scan);

        std::vector<std::string> modes{"omni"};
        std::vector<int> angles(static_cast<std::size_t>(ss_scan_num_angles(scan)));
        if (!angles.empty()) {
            if (ss_status st =
                    ss_scan_angles(scan, angles.data(), static_cast<int>(angles.size()));
                st != SS_OK)
                return fail(st);
            for (int azimuth : angles)
                modes.push_back("az:" + std::to_string(azimuth));
        }

        std::printf("report %s environment=%s positions=%d carrier_ghz=%.6g\n",
                    report_scan.c_str(), ss_scan_environment(scan),
                    ss_scan_num_positions(scan), ss_scan_carrier_ghz(scan));
        for (const std::string &mode : modes) {
            ss_track *track = nullptr;
            if (ss_status st = ss_scan_extract_track(scan, mode.c_str(), report_peak_down,
                                                     report_noise_up, &track);
                st != SS_OK)
                return fail(st);
            TrackPtr track_guard(track);

            const std::string tag =
                mode == "omni" ? "omni" : angle_tag(std::stoi(mode.substr(3)));
            const std::string fading_path = report_out + "_" + tag + "_fading.csv";
            const std::string autocorr_path = report_out + "_" + tag + "_autocorr.csv";

            ss_fading *fits = nullptr;
            if (ss_status st = ss_fading_fit(track, &fits); st != SS_OK)
                return fail(st);
            FadingPtr fits_guard(fits);

            ss_autocorr *ac = nullptr;
            if (ss_status st = ss_autocorr_compute(track, report_max_lag, report_min_pairs, &ac);
                st != SS_OK)
                return fail(st);
            AutocorrPtr ac_guard(ac);
            ss_damped_cos model{};
            if (ss_status st = ss_autocorr_fit(ac, report_force_a_zero ? 1 : 0, &model);
                st != SS_OK)
                return fail(st);

            if (ss_status st = ss_report_fading_csv(track, fading_path.c_str()); st != SS_OK)
                return fail(st);
            if (ss_status st =
                    ss_report_autocorr_csv(track, report_max_lag, report_min_pairs,
                                           report_force_a_zero ? 1 : 0, autocorr_path.c_str());
                st != SS_OK)
                return fail(st);

            double ricean_k = std::nan("");
            double lognormal_sigma = std::nan("");
            for (int rank = 0; rank < ss_fading_count(fits); ++rank) {
                const std::string family = ss_fading_family(fits, rank);
                if (family == "ricean")
                    ricean_k = ss_fading_param(fits, rank);
                else if (family == "lognormal_db")
                    lognormal_sigma = ss_fading_param(fits, rank);
            }
            std::printf("[%s] n=%d best=%s ricean_k_db=%.6g lognormal_sigma_db=%.6g",
                        mode.c_str(), ss_track_length(track), ss_fading_family(fits, 0),
                        ricean_k, lognormal_sigma);
            if (model.has_period)
                std::printf(" a=%.6g b=%.6g T_wavelengths=%.6g d_wavelengths=%.6g",
                            model.a, model.b, model.period, model.distance);
            else
                std::printf(" a=%.6g b=%.6g T_wavelengths=- d_wavelengths=%.6g", model.a,
                            model.b, model.distance);
            if (model.has_distance_empirical)
                std::printf(" d_empirical_wavelengths=%.6g", model.distance_empirical);
            else
                std::printf(" d_empirical_wavelengths=-");
            std::printf(" extrapolated=%d\n", model.extrapolated);
            std::printf("  wrote %s\n  wrote %s\n", fading_path.c_str(),
                        autocorr_path.c_str());
        }
        return 0;
    }

    return 2;
}

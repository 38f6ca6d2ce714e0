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
// Exercises the shared-library C surface only: opaque handles, status
// codes, and the thread-local error message.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <smallscale/smallscale.h>

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "smallscale_capi_tests";
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Positive, mildly fading amplitude sequence; plain engine use is fine
// here since the C API has no sampling entry points of its own.
std::vector<double> sample_amplitudes(std::size_t n, unsigned seed) {
    std::mt19937 engine(seed);
    std::normal_distribution<double> normal(0.0, 0.075);
    std::vector<double> amplitudes(n);
    for (double &a : amplitudes)
        a = std::pow(10.0, normal(engine));
    return amplitudes;
}

} // namespace

TEST_CASE("version and status strings") {
    CHECK(ss_version() != nullptr);
    CHECK(std::strlen(ss_version()) > 0);
    CHECK(std::string(ss_status_name(SS_OK)) == "ok");
    CHECK(std::strlen(ss_status_name(SS_ERR_DEGENERATE)) > 0);
}

TEST_CASE("track create and accessors") {
    const std::vector<double> amplitudes = sample_amplitudes(64, 1);
    ss_track *track = nullptr;
    REQUIRE(ss_track_create(amplitudes.data(), 64, 0.5, 73.5, "capi", &track) == SS_OK);
    CHECK(ss_track_length(track) == 64);
    CHECK(ss_track_spacing_wavelengths(track) == 0.5);
    CHECK(ss_track_carrier_ghz(track) == 73.5);
    CHECK(std::string(ss_track_label(track)) == "capi");

    std::vector<double> out(64);
    CHECK(ss_track_amplitudes(track, out.data(), 64) == SS_OK);
    CHECK(out == amplitudes);

    std::vector<double> rel(64);
    CHECK(ss_track_rel_db(track, rel.data(), 64) == SS_OK);
    double mean_linear = 0.0;
    for (double r : rel)
        mean_linear += std::pow(10.0, r / 20.0);
    CHECK(mean_linear / 64.0 == doctest::Approx(1.0).epsilon(1e-12));

    // undersized buffer is a usage error
    CHECK(ss_track_amplitudes(track, out.data(), 10) == SS_ERR_USAGE);
    CHECK(std::strlen(ss_last_error()) > 0);

    ss_track_free(track);
}

TEST_CASE("null and invalid arguments") {
    CHECK(ss_track_create(nullptr, 4, 0.5, 73.5, "", nullptr) == SS_ERR_USAGE);
    const double zero[2] = {1.0, 0.0};
    ss_track *track = nullptr;
    CHECK(ss_track_create(zero, 2, 0.5, 73.5, "", &track) == SS_ERR_VALIDATION);
    CHECK(std::string(ss_last_error()).find("positive") != std::string::npos);

    ss_scan *scan = nullptr;
    CHECK(ss_scan_load((work_dir() / "missing.json").string().c_str(), &scan) ==
          SS_ERR_VALIDATION);
    CHECK(std::string(ss_last_error()).find("missing.json") != std::string::npos);

    double k = 0.0;
    CHECK(ss_k_factor_dominant(nullptr, 2, &k) == SS_ERR_USAGE);
    const double one[1] = {1.0};
    CHECK(ss_k_factor_dominant(one, 1, &k) == SS_ERR_VALIDATION);
}

TEST_CASE("dominant-path K factor") {
    const double powers[2] = {10.0, 1.0};
    double k = 0.0;
    REQUIRE(ss_k_factor_dominant(powers, 2, &k) == SS_OK);
    CHECK(k == doctest::Approx(10.0).epsilon(1e-12));

    const double lone[2] = {10.0, 0.0};
    REQUIRE(ss_k_factor_dominant(lone, 2, &k) == SS_OK);
    CHECK(std::isinf(k));
}

TEST_CASE("fading fit through the C surface") {
    const std::vector<double> amplitudes = sample_amplitudes(400, 2);
    ss_track *track = nullptr;
    REQUIRE(ss_track_create(amplitudes.data(), 400, 0.5, 73.5, "", &track) == SS_OK);

    ss_fading *fits = nullptr;
    REQUIRE(ss_fading_fit(track, &fits) == SS_OK);
    REQUIRE(ss_fading_count(fits) == 3);
    double prev = -1.0;
    bool saw_ricean = false, saw_lognormal = false, saw_rayleigh = false;
    for (int rank = 0; rank < 3; ++rank) {
        const std::string family = ss_fading_family(fits, rank);
        saw_ricean = saw_ricean || family == "ricean";
        saw_lognormal = saw_lognormal || family == "lognormal_db";
        saw_rayleigh = saw_rayleigh || family == "rayleigh";
        const double ks = ss_fading_ks(fits, rank);
        CHECK(ks >= prev);
        prev = ks;
        CHECK(ss_fading_mmse(fits, rank) >= 0.0);
    }
    CHECK(saw_ricean);
    CHECK(saw_lognormal);
    CHECK(saw_rayleigh);
    ss_fading_free(fits);

    // constant track cannot be fitted
    std::vector<double> constant(64, 1.0);
    ss_track *flat = nullptr;
    REQUIRE(ss_track_create(constant.data(), 64, 0.5, 73.5, "", &flat) == SS_OK);
    ss_fading *bad = nullptr;
    CHECK(ss_fading_fit(flat, &bad) == SS_ERR_DEGENERATE);
    ss_track_free(flat);
    ss_track_free(track);
}

TEST_CASE("autocorrelation through the C surface") {
    const std::vector<double> amplitudes = sample_amplitudes(175, 3);
    ss_track *track = nullptr;
    REQUIRE(ss_track_create(amplitudes.data(), 175, 0.5, 73.5, "", &track) == SS_OK);

    ss_autocorr *ac = nullptr;
    REQUIRE(ss_autocorr_compute(track, 0.0, 0, &ac) == SS_OK);
    const int lags = ss_autocorr_num_lags(ac);
    CHECK(lags == 61);
    std::vector<double> lag(lags), rho(lags);
    REQUIRE(ss_autocorr_values(ac, lag.data(), rho.data(), lags) == SS_OK);
    CHECK(lag[0] == 0.0);
    CHECK(rho[0] == 1.0);

    ss_damped_cos model{};
    REQUIRE(ss_autocorr_fit(ac, 0, &model) == SS_OK);
    CHECK(model.b > 0.0);
    CHECK(model.distance == doctest::Approx(1.0 / model.b));

    ss_damped_cos forced{};
    REQUIRE(ss_autocorr_fit(ac, 1, &forced) == SS_OK);
    CHECK(forced.a == 0.0);
    CHECK(forced.has_period == 0);
    ss_autocorr_free(ac);

    // too-aggressive lag request fails validation
    ss_autocorr *bad = nullptr;
    CHECK(ss_autocorr_compute(track, 80.0, 100, &bad) == SS_ERR_VALIDATION);
    ss_track_free(track);
}

TEST_CASE("generate, files, and reports through the C surface") {
    const fs::path dir = work_dir();
    const std::string spec_path = (dir / "spec.json").string();
    {
        std::ofstream spec(spec_path);
        spec << R"({
          "version": "v1", "kind": "track_spec", "carrier_ghz": 73.5,
          "num_positions": 175, "spacing_wavelengths": 0.5,
          "marginal": {"family": "ricean", "k_db": 10.0},
          "autocorr": {"a": 0.45, "b": 0.10}
        })";
    }
    const std::string out1 = (dir / "track1.json").string();
    const std::string out2 = (dir / "track2.json").string();
    REQUIRE(ss_generate(spec_path.c_str(), 7, out1.c_str()) == SS_OK);
    REQUIRE(ss_generate(spec_path.c_str(), 7, out2.c_str()) == SS_OK);
    CHECK(read_file(out1) == read_file(out2));

    ss_track *track = nullptr;
    REQUIRE(ss_track_load(out1.c_str(), &track) == SS_OK);
    CHECK(ss_track_length(track) == 175);

    const std::string saved = (dir / "resaved.json").string();
    REQUIRE(ss_track_save(track, saved.c_str()) == SS_OK);
    ss_track *reloaded = nullptr;
    REQUIRE(ss_track_load(saved.c_str(), &reloaded) == SS_OK);
    CHECK(ss_track_length(reloaded) == 175);
    std::vector<double> a1(175), a2(175);
    REQUIRE(ss_track_amplitudes(track, a1.data(), 175) == SS_OK);
    REQUIRE(ss_track_amplitudes(reloaded, a2.data(), 175) == SS_OK);
    CHECK(a1 == a2);
    ss_track_free(reloaded);

    const std::string fading_csv = (dir / "fading.csv").string();
    REQUIRE(ss_report_fading_csv(track, fading_csv.c_str()) == SS_OK);
    CHECK(read_file(fading_csv).rfind("r_db,", 0) == 0);

    const std::string ac_csv = (dir / "autocorr.csv").string();
    REQUIRE(ss_report_autocorr_csv(track, 0.0, 0, 0, ac_csv.c_str()) == SS_OK);
    CHECK(read_file(ac_csv).rfind("lag_wavelengths,", 0) == 0);
    ss_track_free(track);
}

TEST_CASE("scan pipeline through the C surface") {
    const fs::path dir = work_dir();
    const std::string spec_path = (dir / "scan_spec.json").string();
    {
        std::ofstream spec(spec_path);
        spec << R"({
          "version": "v1", "kind": "scan_spec", "carrier_ghz": 73.5,
          "num_positions": 48, "spacing_wavelengths": 0.5,
          "environment": "NLOS", "noise_floor_dbm": -90.0,
          "taps": [
            {"delay_ns": 0.0, "mean_power_mw": 10.0, "fading": {"family": "ricean", "k_db": 12.0}},
            {"delay_ns": 10.0, "mean_power_mw": 1.0, "fading": {"family": "rayleigh"}}
          ],
          "angles": [
            {"azimuth_deg": 30, "taps": [0, 1]},
            {"azimuth_deg": 90, "taps": [1]},
            {"azimuth_deg": 150, "taps": [1]}
          ]
        })";
    }
    const std::string scan_path = (dir / "scan.json").string();
    REQUIRE(ss_generate(spec_path.c_str(), 11, scan_path.c_str()) == SS_OK);

    ss_scan *scan = nullptr;
    REQUIRE(ss_scan_load(scan_path.c_str(), &scan) == SS_OK);
    CHECK(ss_scan_num_positions(scan) == 48);
    CHECK(std::string(ss_scan_environment(scan)) == "NLOS");
    REQUIRE(ss_scan_num_angles(scan) == 3);
    int angles[3] = {};
    REQUIRE(ss_scan_angles(scan, angles, 3) == SS_OK);
    CHECK(angles[0] == 30);
    CHECK(angles[2] == 150);
    CHECK(ss_scan_angles(scan, angles, 2) == SS_ERR_USAGE);

    ss_track *omni = nullptr;
    REQUIRE(ss_scan_extract_track(scan, "omni", SS_DEFAULT_PEAK_DOWN_DB,
                                  SS_DEFAULT_NOISE_UP_DB, &omni) == SS_OK);
    CHECK(ss_track_length(omni) == 48);
    ss_track_free(omni);

    ss_track *missing = nullptr;
    CHECK(ss_scan_extract_track(scan, "az:270", SS_DEFAULT_PEAK_DOWN_DB,
                                SS_DEFAULT_NOISE_UP_DB, &missing) == SS_ERR_DEGENERATE);
    CHECK(std::string(ss_last_error()).find("270") != std::string::npos);
    CHECK(ss_scan_extract_track(scan, "sideways", SS_DEFAULT_PEAK_DOWN_DB,
                                SS_DEFAULT_NOISE_UP_DB, &missing) == SS_ERR_USAGE);

    const std::string process_csv = (dir / "process.csv").string();
    REQUIRE(ss_report_process_csv(scan, nullptr, SS_DEFAULT_PEAK_DOWN_DB,
                                  SS_DEFAULT_NOISE_UP_DB, process_csv.c_str()) == SS_OK);
    CHECK(read_file(process_csv).rfind("pointing,", 0) == 0);

    const std::string resaved = (dir / "scan_resaved.json").string();
    REQUIRE(ss_scan_save(scan, resaved.c_str()) == SS_OK);
    ss_scan *reloaded = nullptr;
    REQUIRE(ss_scan_load(resaved.c_str(), &reloaded) == SS_OK);
    CHECK(ss_scan_num_positions(reloaded) == 48);
    ss_scan_free(reloaded);
    ss_scan_free(scan);
}

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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smallscale/autocorr.hpp"
#include "smallscale/errors.hpp"
#include "smallscale/numerics.hpp"
#include "smallscale/pdp.hpp"
#include "smallscale/synth.hpp"

using namespace smallscale;

namespace {

std::vector<std::size_t> rank_order(const std::vector<double> &values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    return idx;
}

} // namespace

TEST_CASE("correlation matrix construction") {
    const CorrelationMatrix one = correlation_matrix(1, 0.5, 0.3, 0.2);
    CHECK(one.n == 1);
    CHECK(one.at(0, 0) == 1.0);

    const CorrelationMatrix two = correlation_matrix(2, 0.5, 0.0, 0.26);
    CHECK(two.at(0, 1) == doctest::Approx(0.8781).epsilon(1e-4));
    CHECK(two.at(0, 1) == two.at(1, 0));

    const CorrelationMatrix m = correlation_matrix(16, 0.5, 0.45, 0.10);
    for (std::size_t i = 0; i < m.n; ++i) {
        CHECK(m.at(i, i) == 1.0);
        for (std::size_t j = 0; j < m.n; ++j)
            CHECK(m.at(i, j) == m.at(j, i));
    }

    CHECK_THROWS_AS(correlation_matrix(0, 0.5, 0.0, 0.26), UsageError);
    CHECK_THROWS_AS(correlation_matrix(8, 0.5, 0.0, 0.0), UsageError);
}

TEST_CASE("damped-cosine kernels stay factorizable across the fitted ranges") {
    // (a, b) values spanning every row of the fitted-parameter table
    for (double a : {0.0, 0.1, 0.25, 0.45, 0.5}) {
        for (double b : {0.005, 0.04, 0.10, 0.26, 0.75, 1.49}) {
            const CorrelationMatrix m = correlation_matrix(175, 0.5, a, b);
            const CholeskyFactor factor = cholesky_with_jitter(m, 1e-8);
            CHECK(factor.jitter <= 1e-8);
        }
    }
}

TEST_CASE("correlated gaussian sampling: identity matrix gives iid normals") {
    const CorrelationMatrix identity = correlation_matrix(100, 0.5, 0.0, 1e6);
    double cross = 0.0, var = 0.0;
    std::size_t pairs = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const std::vector<double> z = sample_correlated_gaussian(identity, seed);
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            cross += z[i] * z[i + 1];
            var += z[i] * z[i];
            ++pairs;
        }
    }
    const double lag1 = cross / var;
    CHECK(std::abs(lag1) <= 0.02);
    CHECK(var / static_cast<double>(pairs) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("correlated gaussian sampling: pair correlation matches the matrix") {
    const CorrelationMatrix two = correlation_matrix(2, 0.5, 0.0, 0.26);
    double s00 = 0.0, s11 = 0.0, s01 = 0.0;
    const int draws = 100000;
    for (int seed = 0; seed < draws; ++seed) {
        const std::vector<double> z =
            sample_correlated_gaussian(two, static_cast<std::uint64_t>(seed));
        s00 += z[0] * z[0];
        s11 += z[1] * z[1];
        s01 += z[0] * z[1];
    }
    CHECK(s01 / std::sqrt(s00 * s11) == doctest::Approx(0.878).epsilon(0.012));
}

TEST_CASE("sampling is deterministic per seed") {
    const CorrelationMatrix m = correlation_matrix(32, 0.5, 0.45, 0.10);
    const std::vector<double> first = sample_correlated_gaussian(m, 7);
    const std::vector<double> second = sample_correlated_gaussian(m, 7);
    CHECK(first == second);
    const std::vector<double> other = sample_correlated_gaussian(m, 8);
    CHECK(first != other);
}

TEST_CASE("generated tracks preserve gaussian ranks exactly") {
    SynthSpec spec;
    spec.geometry.num_positions = 175;
    spec.marginal = FadingFamily::lognormal_db(0.65);
    spec.autocorr_a = 0.45;
    spec.autocorr_b = 0.10;
    spec.seed = 3;
    const AmplitudeTrack track = generate_track(spec);

    const CorrelationMatrix m = correlation_matrix(175, 0.5, 0.45, 0.10);
    const std::vector<double> z = sample_correlated_gaussian(m, 3);
    CHECK(rank_order(z) == rank_order(track.amplitudes));
}

TEST_CASE("generated tracks are deterministic and labeled") {
    SynthSpec spec;
    spec.geometry.num_positions = 64;
    spec.marginal = FadingFamily::ricean(10.0);
    spec.autocorr_a = 0.0;
    spec.autocorr_b = 0.26;
    spec.seed = 42;
    const AmplitudeTrack first = generate_track(spec);
    const AmplitudeTrack second = generate_track(spec);
    CHECK(first.amplitudes == second.amplitudes);
    CHECK(first.label.find("seed=42") != std::string::npos);

    spec.seed = 43;
    CHECK(generate_track(spec).amplitudes != first.amplitudes);

    spec.autocorr_b = 0.0;
    CHECK_THROWS_AS(generate_track(spec), ValidationError);
}

TEST_CASE("generated marginals match the requested family") {
    // b = 3 keeps neighboring samples nearly independent so the pooled KS
    // statistic is meaningful at this sample count.
    for (const FadingFamily &family :
         {FadingFamily::lognormal_db(0.65), FadingFamily::ricean(10.0),
          FadingFamily::rayleigh()}) {
        SynthSpec spec;
        spec.geometry.num_positions = 175;
        spec.marginal = family;
        spec.autocorr_a = 0.0;
        spec.autocorr_b = 3.0;
        std::vector<double> pooled;
        pooled.reserve(600 * 175);
        for (std::uint64_t seed = 0; seed < 600; ++seed) {
            spec.seed = seed;
            const AmplitudeTrack track = generate_track(spec);
            pooled.insert(pooled.end(), track.amplitudes.begin(), track.amplitudes.end());
        }
        std::sort(pooled.begin(), pooled.end());

        std::vector<double> model(pooled.size());
        if (family.kind == FamilyKind::Ricean) {
            model = RiceanAmplitude(family.k_db).cdf_at_sorted(pooled);
        } else if (family.kind == FamilyKind::LogNormalDb) {
            for (std::size_t i = 0; i < pooled.size(); ++i)
                model[i] = num::normal_cdf(20.0 * std::log10(pooled[i]) / family.sigma_db);
        } else {
            for (std::size_t i = 0; i < pooled.size(); ++i)
                model[i] = 1.0 - std::exp(-0.5 * pooled[i] * pooled[i]);
        }
        const std::size_t n = pooled.size();
        double ks = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
            const double lo = static_cast<double>(i) / static_cast<double>(n);
            ks = std::max(ks, std::max(hi - model[i], model[i] - lo));
        }
        CHECK(ks <= 0.01);
    }
}

TEST_CASE("fast decay produces nearly independent consecutive samples") {
    SynthSpec spec;
    spec.geometry.num_positions = 175;
    spec.marginal = FadingFamily::lognormal_db(0.65);
    spec.autocorr_a = 0.0;
    spec.autocorr_b = 5.0;
    std::vector<double> lag1;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        spec.seed = seed;
        const AmplitudeTrack track = generate_track(spec);
        const AutocorrSeries series = autocorrelation(track, 1.0, 100);
        lag1.push_back(series.rho[1]);
    }
    std::sort(lag1.begin(), lag1.end());
    CHECK(lag1[lag1.size() / 2] <= 0.15);
}

TEST_CASE("round trip keeps the median fitted decay within half to 1.5x") {
    // default (unrestricted) damped-cosine fit over 100 seeds per decay value
    for (double b_true : {0.05, 0.26, 1.5}) {
        SynthSpec spec;
        spec.geometry.num_positions = 175;
        spec.marginal = FadingFamily::lognormal_db(0.65);
        spec.autocorr_a = 0.0;
        spec.autocorr_b = b_true;
        std::vector<double> fitted;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            spec.seed = seed;
            const AmplitudeTrack track = generate_track(spec);
            fitted.push_back(fit_damped_cos(autocorrelation(track)).b);
        }
        std::sort(fitted.begin(), fitted.end());
        const double median = fitted[fitted.size() / 2];
        CHECK(median >= 0.5 * b_true);
        CHECK(median <= 1.5 * b_true);
    }
}

namespace {

MultipathSpec simple_multipath() {
    MultipathSpec spec;
    spec.taps = {TapSpec{0.0, 10.0, {}}, TapSpec{10.0, 0.5, {}}, TapSpec{14.0, 0.3, {}},
                 TapSpec{22.0, 0.2, {}}};
    spec.angle_taps = {{30, {0, 1, 2, 3}}, {90, {1, 2}}, {150, {3}}};
    spec.noise_floor_dbm = -90.0;
    spec.seed = 5;
    return spec;
}

} // namespace

TEST_CASE("generated scans: constant taps give a constant omni track") {
    MultipathSpec spec;
    spec.taps = {TapSpec{0.0, 1.0, {}}};
    spec.angle_taps = {{30, {0}}, {90, {0}},  {150, {0}},
                       {210, {0}}, {270, {0}}, {330, {0}}};
    spec.noise_floor_dbm = -90.0;
    TrackGeometry geometry;
    geometry.num_positions = 8;
    const TrackScan scan =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Los);
    const AmplitudeTrack omni = scan_to_amplitude_track(scan, TrackMode::omnidirectional());
    for (double a : omni.amplitudes)
        CHECK(a == doctest::Approx(omni.amplitudes.front()).epsilon(1e-12));
    // and a constant track is degenerate for the correlation estimator
    CHECK_THROWS_AS(autocorrelation(omni, 1.0, 2), DegenerateError);
}

TEST_CASE("dominant tap power ratio survives the scan layer") {
    const MultipathSpec spec = simple_multipath();
    std::vector<double> tap_powers;
    for (const TapSpec &tap : spec.taps)
        tap_powers.push_back(tap.mean_power_mw);
    CHECK(estimate_k_dominant(tap_powers) == doctest::Approx(10.0).epsilon(1e-9));

    TrackGeometry geometry;
    geometry.num_positions = 4;
    const TrackScan scan =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Nlos);
    // all four taps visible at 30 degrees: thresholded integral is their sum
    const double p = directional_power(scan, 0, 30);
    CHECK(p == doctest::Approx(11.0).epsilon(1e-3));
}

TEST_CASE("invisible pointing angles have no records") {
    const MultipathSpec spec = simple_multipath();
    TrackGeometry geometry;
    geometry.num_positions = 4;
    const TrackScan scan =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Nlos);
    CHECK(scan.azimuths() == std::vector<int>{30, 90, 150});
    CHECK_THROWS_AS((void)scan_to_amplitude_track(scan, TrackMode::directional(270)),
                    DegenerateError);
}

TEST_CASE("scan generation is deterministic and honors tap fading") {
    MultipathSpec spec = simple_multipath();
    spec.taps[0].fading = FadingFamily::ricean(10.0);
    spec.taps[1].fading = FadingFamily::lognormal_db(0.65);
    TrackGeometry geometry;
    geometry.num_positions = 16;

    const TrackScan first =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Los);
    const TrackScan second =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Los);
    const Pdp *p1 = first.find(3, 30);
    const Pdp *p2 = second.find(3, 30);
    REQUIRE(p1 != nullptr);
    REQUIRE(p2 != nullptr);
    CHECK(p1->powers_mw == p2->powers_mw);

    // faded tap varies across positions
    const Pdp *q = first.find(4, 30);
    REQUIRE(q != nullptr);
    CHECK(p1->powers_mw[0] != q->powers_mw[0]);

    // spatially correlated tap fading is accepted and deterministic
    spec.tap_autocorr = {{0.0, 0.26}};
    const TrackScan corr1 =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Los);
    const TrackScan corr2 =
        generate_scan(spec, geometry, CarrierConfig{73.5}, Environment::Los);
    CHECK(corr1.find(5, 30)->powers_mw == corr2.find(5, 30)->powers_mw);
}

TEST_CASE("multipath spec validation") {
    MultipathSpec spec = simple_multipath();
    spec.taps[1].delay_ns = 0.0; // not strictly increasing
    CHECK_THROWS_AS(spec.validate(), ValidationError);

    spec = simple_multipath();
    spec.taps[0].mean_power_mw = 0.0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);

    spec = simple_multipath();
    spec.angle_taps[90] = {99};
    CHECK_THROWS_AS(spec.validate(), ValidationError);

    spec = simple_multipath();
    spec.angle_taps.clear();
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

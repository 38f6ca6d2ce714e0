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

#include "smallscale/synth.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "smallscale/autocorr.hpp"
#include "smallscale/errors.hpp"
#include "smallscale/numerics.hpp"

namespace smallscale {

void SynthSpec::validate() const {
    geometry.validate();
    if (geometry.num_positions < 2)
        throw ValidationError("synth spec: need at least 2 track positions");
    marginal.validate();
    if (!(autocorr_a >= 0.0) || !std::isfinite(autocorr_a))
        throw ValidationError("synth spec: autocorr a must be non-negative");
    if (!(autocorr_b > 0.0) || !std::isfinite(autocorr_b))
        throw ValidationError("synth spec: autocorr b must be positive");
}

void MultipathSpec::validate() const {
    if (taps.empty())
        throw ValidationError("multipath spec: need at least one tap");
    double prev = -1.0;
    for (const TapSpec &tap : taps) {
        if (!(tap.delay_ns >= 0.0))
            throw ValidationError("multipath spec: delays must be non-negative");
        if (!(tap.delay_ns > prev))
            throw ValidationError("multipath spec: delays must be strictly increasing");
        prev = tap.delay_ns;
        if (!(tap.mean_power_mw > 0.0))
            throw ValidationError("multipath spec: tap powers must be positive");
        if (tap.fading)
            tap.fading->validate();
    }
    if (angle_taps.empty())
        throw ValidationError("multipath spec: need at least one visible angle");
    for (const auto &[azimuth, visible] : angle_taps) {
        if (azimuth < 0 || azimuth >= 360)
            throw ValidationError("multipath spec: azimuth " + std::to_string(azimuth) +
                                  " out of range [0, 360)");
        for (std::size_t idx : visible)
            if (idx >= taps.size())
                throw ValidationError("multipath spec: angle " + std::to_string(azimuth) +
                                      " references tap " + std::to_string(idx) +
                                      " out of range");
    }
    if (!(delay_step_ns > 0.0))
        throw ValidationError("multipath spec: delay_step_ns must be positive");
    if (!std::isfinite(noise_floor_dbm))
        throw ValidationError("multipath spec: noise_floor_dbm must be finite");
    if (tap_autocorr) {
        if (!(tap_autocorr->first >= 0.0))
            throw ValidationError("multipath spec: tap autocorr a must be non-negative");
        if (!(tap_autocorr->second > 0.0))
            throw ValidationError("multipath spec: tap autocorr b must be positive");
    }
}

CorrelationMatrix correlation_matrix(std::size_t n, double spacing_wavelengths, double a,
                                     double b) {
    if (n == 0)
        throw UsageError("correlation_matrix: n must be at least 1");
    if (!(spacing_wavelengths > 0.0))
        throw UsageError("correlation_matrix: spacing must be positive");
    if (!(b > 0.0))
        throw UsageError("correlation_matrix: b must be positive");
    CorrelationMatrix m;
    m.n = n;
    m.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        m.values[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = static_cast<double>(j - i) * spacing_wavelengths;
            const double value = damped_cos(a, b, dx);
            m.values[i * n + j] = value;
            m.values[j * n + i] = value;
        }
    }
    return m;
}

CholeskyFactor cholesky_with_jitter(const CorrelationMatrix &matrix, double max_jitter) {
    if (matrix.n == 0 || matrix.values.size() != matrix.n * matrix.n)
        throw UsageError("cholesky_with_jitter: malformed matrix");
    const auto n = static_cast<Eigen::Index>(matrix.n);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>
        base(matrix.values.data(), n, n);

    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd work = base;
        if (jitter > 0.0)
            work.diagonal().array() += jitter;
        const Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            CholeskyFactor factor;
            factor.n = matrix.n;
            factor.jitter = jitter;
            factor.lower.resize(matrix.n * matrix.n, 0.0);
            const Eigen::MatrixXd lower = llt.matrixL();
            for (std::size_t i = 0; i < matrix.n; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    factor.lower[i * matrix.n + j] =
                        lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            return factor;
        }
        if (jitter == 0.0)
            jitter = 1e-12;
        else if (jitter * 10.0 <= max_jitter * (1.0 + 1e-12))
            jitter *= 10.0;
        else
            throw DegenerateError("cholesky_with_jitter: factorization failed even with "
                                  "maximum diagonal jitter");
    }
}

std::vector<double> sample_correlated_gaussian(const CorrelationMatrix &matrix,
                                               std::uint64_t seed) {
    const CholeskyFactor factor = cholesky_with_jitter(matrix);
    num::Rng rng(seed);
    std::vector<double> iid(matrix.n);
    for (double &g : iid)
        g = rng.normal();
    std::vector<double> out(matrix.n, 0.0);
    for (std::size_t i = 0; i < matrix.n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j <= i; ++j)
            sum += factor.lower[i * matrix.n + j] * iid[j];
        out[i] = sum;
    }
    return out;
}

AmplitudeTrack generate_track(const SynthSpec &spec) {
    spec.validate();
    const CorrelationMatrix matrix = correlation_matrix(
        spec.geometry.num_positions, spec.geometry.spacing_wavelengths, spec.autocorr_a,
        spec.autocorr_b);
    const std::vector<double> gaussian = sample_correlated_gaussian(matrix, spec.seed);
    const FamilyQuantile quantile(spec.marginal);

    AmplitudeTrack track;
    track.spacing_wavelengths = spec.geometry.spacing_wavelengths;
    std::ostringstream label;
    label << "synth:" << family_name(spec.marginal.kind) << ",a=" << spec.autocorr_a
          << ",b=" << spec.autocorr_b << ",seed=" << spec.seed;
    track.label = label.str();
    track.amplitudes.reserve(gaussian.size());
    for (double z : gaussian)
        track.amplitudes.push_back(quantile(num::normal_cdf(z)));
    track.validate();
    return track;
}

namespace {

// Per-position power multipliers of one tap, normalized so the mean square
// of the fading amplitude is one.
std::vector<double> tap_multipliers(const MultipathSpec &spec, const TrackGeometry &geometry,
                                    std::size_t tap_index) {
    const TapSpec &tap = spec.taps[tap_index];
    const std::size_t n = geometry.num_positions;
    std::vector<double> mult(n, 1.0);
    if (!tap.fading)
        return mult;

    const double mean_square = family_mean_square(*tap.fading);
    if (spec.tap_autocorr) {
        SynthSpec sub;
        sub.geometry = geometry;
        sub.marginal = *tap.fading;
        sub.autocorr_a = spec.tap_autocorr->first;
        sub.autocorr_b = spec.tap_autocorr->second;
        sub.seed = num::derive_seed(spec.seed, tap_index);
        const AmplitudeTrack track = generate_track(sub);
        for (std::size_t i = 0; i < n; ++i)
            mult[i] = track.amplitudes[i] * track.amplitudes[i] / mean_square;
        return mult;
    }

    const FamilyQuantile quantile(*tap.fading);
    num::Rng rng(num::derive_seed(spec.seed, tap_index));
    for (std::size_t i = 0; i < n; ++i) {
        const double a = quantile(rng.uniform());
        mult[i] = a * a / mean_square;
    }
    return mult;
}

} // namespace

TrackScan generate_scan(const MultipathSpec &spec, const TrackGeometry &geometry,
                        const CarrierConfig &carrier, Environment environment) {
    spec.validate();
    geometry.validate();
    carrier.validate();

    // Bin layout: tap content plus a noise-only tail long enough for the
    // default tail-fraction estimator.
    const double max_delay = spec.taps.back().delay_ns;
    const std::size_t content_bins =
        static_cast<std::size_t>(std::llround(max_delay / spec.delay_step_ns)) + 1;
    const std::size_t num_bins =
        std::max(content_bins + 8, content_bins + content_bins / 2);

    // Tap fading is drawn once per tap, independent of the visibility
    // layout, so adding or removing an angle never reshuffles the draws.
    std::vector<std::vector<double>> multipliers(spec.taps.size());
    for (std::size_t t = 0; t < spec.taps.size(); ++t)
        multipliers[t] = tap_multipliers(spec, geometry, t);

    const double noise_mw = dbm_to_mw(spec.noise_floor_dbm);

    TrackScan scan;
    scan.carrier = carrier;
    scan.geometry = geometry;
    scan.environment = environment;
    scan.noise_floor_dbm = spec.noise_floor_dbm;
    for (const auto &[azimuth, visible] : spec.angle_taps) {
        for (std::size_t pos = 0; pos < geometry.num_positions; ++pos) {
            Pdp pdp;
            pdp.delay_step_ns = spec.delay_step_ns;
            pdp.noise_floor_dbm = spec.noise_floor_dbm;
            pdp.powers_mw.assign(num_bins, noise_mw);
            for (std::size_t t : visible) {
                const std::size_t bin = static_cast<std::size_t>(
                    std::llround(spec.taps[t].delay_ns / spec.delay_step_ns));
                pdp.powers_mw[bin] += spec.taps[t].mean_power_mw * multipliers[t][pos];
            }
            scan.records.emplace(std::make_pair(pos, azimuth), std::move(pdp));
        }
    }
    scan.validate();
    return scan;
}

} // namespace smallscale

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

#include "smallscale/autocorr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smallscale/errors.hpp"
#include "smallscale/numerics.hpp"

namespace smallscale {

void AutocorrSeries::validate() const {
    if (lags_wavelengths.size() != rho.size() || lags_wavelengths.empty())
        throw ValidationError("autocorr series: lag and rho lengths must match and be "
                              "non-empty");
    if (rho.front() != 1.0)
        throw ValidationError("autocorr series: rho[0] must be 1");
    for (std::size_t i = 1; i < lags_wavelengths.size(); ++i)
        if (!(lags_wavelengths[i] > lags_wavelengths[i - 1]))
            throw ValidationError("autocorr series: lags must be strictly increasing");
    for (double r : rho)
        if (!(std::abs(r) <= 1.0 + 1e-9))
            throw ValidationError("autocorr series: |rho| must not exceed 1");
}

double default_max_lag(const AmplitudeTrack &track, int min_pairs) {
    track.validate();
    if (min_pairs < 2)
        throw UsageError("default_max_lag: min_pairs must be at least 2");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(track.amplitudes.size());
    const std::ptrdiff_t max_m = n - min_pairs;
    if (max_m < 1)
        throw ValidationError("default_max_lag: track too short for " +
                              std::to_string(min_pairs) + " overlapping pairs");
    return std::min(kDefaultMaxLagWavelengths,
                    static_cast<double>(max_m) * track.spacing_wavelengths);
}

AutocorrSeries autocorrelation(const AmplitudeTrack &track, double max_lag_wavelengths,
                               int min_pairs, MeanConvention convention) {
    track.validate();
    if (track.amplitudes.size() < 2)
        throw ValidationError("autocorrelation: track length must be at least 2");
    if (min_pairs <= 0)
        min_pairs = kDefaultMinPairs;
    if (max_lag_wavelengths <= 0.0)
        max_lag_wavelengths = default_max_lag(track, min_pairs);

    const std::size_t n = track.amplitudes.size();
    const double spacing = track.spacing_wavelengths;
    const std::size_t max_m =
        static_cast<std::size_t>(std::floor(max_lag_wavelengths / spacing + 1e-9));
    if (max_m < 1)
        throw ValidationError("autocorrelation: max_lag below one sample spacing");
    if (n < max_m + static_cast<std::size_t>(min_pairs))
        throw ValidationError("autocorrelation: requested max_lag leaves fewer than " +
                              std::to_string(min_pairs) + " overlapping pairs");

    const std::vector<double> &x = track.amplitudes;

    double global_mean = 0.0;
    for (double v : x)
        global_mean += v;
    global_mean /= static_cast<double>(n);

    AutocorrSeries series;
    series.lags_wavelengths.reserve(max_m + 1);
    series.rho.reserve(max_m + 1);
    series.lags_wavelengths.push_back(0.0);
    series.rho.push_back(1.0);

    for (std::size_t m = 1; m <= max_m; ++m) {
        const std::size_t count = n - m;
        double mu_head, mu_tail;
        if (convention == MeanConvention::Windowed) {
            mu_head = 0.0;
            mu_tail = 0.0;
            for (std::size_t k = 0; k < count; ++k) {
                mu_head += x[k];
                mu_tail += x[k + m];
            }
            mu_head /= static_cast<double>(count);
            mu_tail /= static_cast<double>(count);
        } else {
            mu_head = global_mean;
            mu_tail = global_mean;
        }
        double cross = 0.0, var_head = 0.0, var_tail = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double u = x[k] - mu_head;
            const double v = x[k + m] - mu_tail;
            cross += u * v;
            var_head += u * u;
            var_tail += v * v;
        }
        if (!(var_head > 0.0) || !(var_tail > 0.0))
            throw DegenerateError("autocorrelation: zero variance in a window at lag " +
                                  std::to_string(m) + " (degenerate track)");
        series.lags_wavelengths.push_back(static_cast<double>(m) * spacing);
        series.rho.push_back(cross / std::sqrt(var_head * var_tail));
    }
    return series;
}

double damped_cos(double a, double b, double dx_wavelengths) {
    if (!(b >= 0.0) || !(dx_wavelengths >= 0.0))
        throw UsageError("damped_cos: b and dx must be non-negative");
    return std::cos(a * dx_wavelengths) * std::exp(-b * dx_wavelengths);
}

DampedCosParams DampedCosParams::from_coefficients(double a, double b,
                                                   double max_lag_wavelengths) {
    if (!(b > 0.0))
        throw ValidationError("damped-cos parameters: b must be positive");
    DampedCosParams p;
    p.a = a;
    p.b = b;
    if (a > 0.0)
        p.period = 2.0 * M_PI / a;
    p.distance = 1.0 / b;
    p.extrapolated = p.distance > max_lag_wavelengths;
    return p;
}

double damped_cos_mse(const AutocorrSeries &series, double a, double b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < series.rho.size(); ++i) {
        const double diff =
            damped_cos(a, b, series.lags_wavelengths[i]) - series.rho[i];
        sum += diff * diff;
    }
    return sum / static_cast<double>(series.rho.size());
}

namespace {

constexpr double kGridAStart = 0.01, kGridAStop = 1.5, kGridAStep = 0.01;
constexpr double kGridBStart = 0.001, kGridBStop = 2.0, kGridBStep = 0.005;
// The MSE surface has a long correlated (a, b) valley; coordinate descent
// needs many cheap rounds to walk it down on noiseless series.
constexpr double kRefineTol = 1e-6;
constexpr int kRefineRounds = 60;

std::vector<double> grid_values(double start, double stop, double step, bool with_zero) {
    std::vector<double> values;
    if (with_zero)
        values.push_back(0.0);
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > stop + 1e-12)
            break;
        values.push_back(v);
    }
    if (values.back() < stop - 1e-12)
        values.push_back(stop);
    return values;
}

} // namespace

DampedCosParams fit_damped_cos(const AutocorrSeries &series, bool force_a_zero) {
    series.validate();
    if (series.rho.size() < 5)
        throw ValidationError("fit_damped_cos: need at least 5 lags");

    const std::vector<double> &lags = series.lags_wavelengths;
    const std::vector<double> &rho = series.rho;
    const std::size_t n = rho.size();

    const std::vector<double> a_grid =
        force_a_zero ? std::vector<double>{0.0}
                     : grid_values(kGridAStart, kGridAStop, kGridAStep, true);
    const std::vector<double> b_grid = grid_values(kGridBStart, kGridBStop, kGridBStep, false);

    // Precompute the factor tables once; the grid scan is then a pure
    // multiply-add over lag index.
    std::vector<double> cos_table(a_grid.size() * n);
    for (std::size_t ia = 0; ia < a_grid.size(); ++ia)
        for (std::size_t j = 0; j < n; ++j)
            cos_table[ia * n + j] = std::cos(a_grid[ia] * lags[j]);
    std::vector<double> exp_table(b_grid.size() * n);
    for (std::size_t ib = 0; ib < b_grid.size(); ++ib)
        for (std::size_t j = 0; j < n; ++j)
            exp_table[ib * n + j] = std::exp(-b_grid[ib] * lags[j]);

    double best_mse = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = b_grid.front();
    for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
        const double *crow = &cos_table[ia * n];
        for (std::size_t ib = 0; ib < b_grid.size(); ++ib) {
            const double *erow = &exp_table[ib * n];
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double diff = crow[j] * erow[j] - rho[j];
                sum += diff * diff;
            }
            // Strict comparison keeps the first (smallest a, then smallest b)
            // of any tied minima.
            if (sum < best_mse) {
                best_mse = sum;
                best_a = a_grid[ia];
                best_b = b_grid[ib];
            }
        }
    }

    // Coordinate-wise golden-section refinement around the grid optimum.
    double a = best_a, b = best_b;
    for (int round = 0; round < kRefineRounds; ++round) {
        const double a_prev = a, b_prev = b;
        if (!force_a_zero) {
            const double lo = std::max(0.0, a - kGridAStep);
            const double hi = std::min(kGridAStop, a + kGridAStep);
            a = num::golden_min(
                [&](double cand) { return damped_cos_mse(series, cand, b); }, lo, hi,
                kRefineTol);
        }
        {
            const double lo = std::max(1e-9, b - kGridBStep);
            const double hi = std::min(kGridBStop, b + kGridBStep);
            b = num::golden_min(
                [&](double cand) { return damped_cos_mse(series, a, cand); }, lo, hi,
                kRefineTol);
        }
        if (std::abs(a - a_prev) < 1e-9 && std::abs(b - b_prev) < 1e-9)
            break;
    }
    if (force_a_zero)
        a = 0.0;

    return DampedCosParams::from_coefficients(a, b, series.max_lag());
}

std::optional<double> decorrelation_empirical(const AutocorrSeries &series) {
    series.validate();
    const double inv_e = std::exp(-1.0);
    for (std::size_t i = 1; i < series.rho.size(); ++i) {
        if (series.rho[i] <= inv_e) {
            const double r0 = series.rho[i - 1], r1 = series.rho[i];
            const double l0 = series.lags_wavelengths[i - 1], l1 = series.lags_wavelengths[i];
            const double t = (r0 - inv_e) / (r0 - r1);
            return l0 + t * (l1 - l0);
        }
    }
    return std::nullopt;
}

double wavelengths_to_cm(double x_wavelengths, const CarrierConfig &carrier) {
    carrier.validate();
    if (!(x_wavelengths >= 0.0))
        throw UsageError("wavelengths_to_cm: value must be non-negative");
    return x_wavelengths * carrier.wavelength_cm();
}

} // namespace smallscale

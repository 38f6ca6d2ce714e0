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

#ifndef SMALLSCALE_AUTOCORR_HPP
#define SMALLSCALE_AUTOCORR_HPP

#include <optional>

#include "smallscale/model.hpp"

namespace smallscale {

/// Spatial autocorrelation coefficients on a uniform lag grid starting at 0.
struct AutocorrSeries {
    std::vector<double> lags_wavelengths;
    std::vector<double> rho;

    double max_lag() const { return lags_wavelengths.back(); }
    void validate() const;
};

/// Mean convention for the correlation estimator. Windowed subtracts the
/// mean of each overlapping window separately (the default); Global
/// subtracts the full-track mean from both windows and is kept for
/// sensitivity checks.
enum class MeanConvention { Windowed, Global };

inline constexpr double kDefaultMaxLagWavelengths = 30.0;
inline constexpr int kDefaultMinPairs = 100;

/// Default lag ceiling: min(30 wavelengths, largest lag that still leaves
/// min_pairs overlapping pairs).
double default_max_lag(const AmplitudeTrack &track, int min_pairs = kDefaultMinPairs);

/// Normalized spatial autocorrelation of the amplitude track. For lag
/// m * spacing the sums run over the n - m overlapping positions with the
/// window means removed; rho[0] is exactly 1. max_lag <= 0 selects the
/// default ceiling. Throws DegenerateError when a window has zero variance.
AutocorrSeries autocorrelation(const AmplitudeTrack &track, double max_lag_wavelengths = 0.0,
                               int min_pairs = kDefaultMinPairs,
                               MeanConvention convention = MeanConvention::Windowed);

/// Damped oscillation model: cos(a*dx) * exp(-b*dx).
double damped_cos(double a, double b, double dx_wavelengths);

/// Fitted damped-oscillation parameters. T = 2*pi/a is absent when a = 0;
/// d = 1/b; extrapolated marks d beyond the fitted lag span.
struct DampedCosParams {
    double a = 0.0;                      // rad / wavelength
    double b = 0.0;                      // 1 / wavelength
    std::optional<double> period;       // T, wavelengths
    double distance = 0.0;               // d, wavelengths
    bool extrapolated = false;

    static DampedCosParams from_coefficients(double a, double b, double max_lag_wavelengths);
};

/// MMSE fit of the damped oscillation model to a correlation series.
/// Coarse grid search (a in {0} union [0.01, 1.5] step 0.01, b in
/// [0.001, 2.0] step 0.005) followed by coordinate-wise golden-section
/// refinement; deterministic, ties broken toward smaller a then smaller b.
DampedCosParams fit_damped_cos(const AutocorrSeries &series, bool force_a_zero = false);

/// Mean squared error of the model against a series (fit objective).
double damped_cos_mse(const AutocorrSeries &series, double a, double b);

/// Smallest lag where rho first reaches 1/e, linearly interpolated between
/// the bracketing samples; nullopt when rho stays above 1/e.
std::optional<double> decorrelation_empirical(const AutocorrSeries &series);

double wavelengths_to_cm(double x_wavelengths, const CarrierConfig &carrier);

} // namespace smallscale

#endif

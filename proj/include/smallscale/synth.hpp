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

#ifndef SMALLSCALE_SYNTH_HPP
#define SMALLSCALE_SYNTH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "smallscale/fading.hpp"
#include "smallscale/model.hpp"

namespace smallscale {

/// Recipe for one synthetic amplitude track: marginal distribution plus
/// damped-oscillation autocorrelation shape.
struct SynthSpec {
    TrackGeometry geometry;
    FadingFamily marginal;
    double autocorr_a = 0.0; // rad / wavelength
    double autocorr_b = 0.26; // 1 / wavelength
    std::uint64_t seed = 0;

    void validate() const;
};

/// One multipath tap: excess delay, mean linear power, and the fading
/// family of its per-position fluctuation (nullopt = no fading).
struct TapSpec {
    double delay_ns = 0.0;
    double mean_power_mw = 1.0;
    std::optional<FadingFamily> fading;
};

/// Recipe for a synthetic track scan standing in for the measurement
/// hardware: taps, per-angle tap visibility, and the noise background.
struct MultipathSpec {
    std::vector<TapSpec> taps;
    std::map<int, std::vector<std::size_t>> angle_taps; // azimuth -> visible taps
    double noise_floor_dbm = -90.0;
    double delay_step_ns = 2.0;
    std::uint64_t seed = 0;
    /// When set, tap fading is spatially correlated with these (a, b)
    /// instead of independent per position.
    std::optional<std::pair<double, double>> tap_autocorr;

    void validate() const;
};

/// Dense symmetric matrix with unit diagonal (row-major storage).
struct CorrelationMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// Pairwise damped-cosine correlation of n track positions.
CorrelationMatrix correlation_matrix(std::size_t n, double spacing_wavelengths, double a,
                                     double b);

/// Lower Cholesky factor with escalating diagonal jitter (0, then 1e-12
/// up to max_jitter in decade steps). Reports the jitter that succeeded.
struct CholeskyFactor {
    std::size_t n = 0;
    std::vector<double> lower; // row-major
    double jitter = 0.0;
};

CholeskyFactor cholesky_with_jitter(const CorrelationMatrix &matrix,
                                    double max_jitter = 1e-6);

/// Standard-normal vector with the given correlation; deterministic per seed.
std::vector<double> sample_correlated_gaussian(const CorrelationMatrix &matrix,
                                               std::uint64_t seed);

/// Gaussian-copula track generator: correlated normals mapped through the
/// normal CDF and the marginal's inverse CDF. Ranks of the Gaussian and
/// output tracks are identical.
AmplitudeTrack generate_track(const SynthSpec &spec);

/// Synthetic multipath scan over a track; one PDP per (position, visible
/// angle). Deterministic per seed; tap draws are independent of the angle
/// visibility layout.
TrackScan generate_scan(const MultipathSpec &spec, const TrackGeometry &geometry,
                        const CarrierConfig &carrier, Environment environment);

} // namespace smallscale

#endif

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

#ifndef SMALLSCALE_FADING_HPP
#define SMALLSCALE_FADING_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace smallscale {

enum class FamilyKind { Ricean, LogNormalDb, Rayleigh };

const char *family_name(FamilyKind kind);
FamilyKind parse_family(const std::string &name);

/// Candidate small-scale fading marginal. Exactly one of the parameters is
/// meaningful, selected by `kind`:
///   Ricean      - K factor in dB (dominant-to-diffuse power ratio),
///   LogNormalDb - standard deviation in dB of the zero-mean dB-about-mean level,
///   Rayleigh    - parameter free.
struct FadingFamily {
    FamilyKind kind = FamilyKind::Rayleigh;
    double k_db = 0.0;
    double sigma_db = 0.0;

    static FadingFamily ricean(double k_db) { return {FamilyKind::Ricean, k_db, 0.0}; }
    static FadingFamily lognormal_db(double sigma_db) {
        return {FamilyKind::LogNormalDb, 0.0, sigma_db};
    }
    static FadingFamily rayleigh() { return {FamilyKind::Rayleigh, 0.0, 0.0}; }

    void validate() const;

    /// Fitted parameter of this family (K for Ricean, sigma for LogNormalDb,
    /// NaN for Rayleigh).
    double parameter() const;
};

/// Result of fitting one family to a sample of dB-about-mean levels.
struct FadingFit {
    FadingFamily family;
    double fit_error = 0.0; // mean squared CDF error on a uniform r grid
    double ks_stat = 0.0;   // sup-norm distance between empirical and model CDF
    std::size_t sample_count = 0;
};

/// Right-continuous empirical CDF.
class Ecdf {
  public:
    explicit Ecdf(std::span<const double> samples);

    /// P(X <= x) = (number of samples <= x) / n.
    double operator()(double x) const;

    const std::vector<double> &sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

/// Dominant-path K factor (dB): power of the strongest path over the sum
/// of all other path powers. Returns +infinity when the residual is zero.
double estimate_k_dominant(std::span<const double> path_powers_mw);

/// Ricean amplitude distribution with unit diffuse scale (sigma = 1) and
/// non-centrality from the K factor: nu^2 / (2 sigma^2) = 10^(K/10).
/// The mean is obtained by adaptive quadrature of the PDF (relative error
/// <= 1e-8); no special-function library is required.
class RiceanAmplitude {
  public:
    explicit RiceanAmplitude(double k_db);

    double k_db() const { return k_db_; }
    double nu() const { return nu_; }
    double mean() const { return mean_; }

    double pdf(double a) const;
    double cdf(double a) const;

    /// P(20*log10(A / E[A]) <= r).
    double cdf_rel_db(double r_db) const;

    /// Batched CDF at ascending r values (single cumulative integration).
    std::vector<double> cdf_rel_db_grid(std::span<const double> r_db_ascending) const;

    /// Batched CDF at ascending amplitudes.
    std::vector<double> cdf_at_sorted(std::span<const double> amplitudes_ascending) const;

  private:
    double upper_bound() const { return nu_ + 12.0; }
    double k_db_;
    double nu_;
    double mean_;
};

/// Model CDF of the dB-about-mean level r for any family.
double model_cdf(const FadingFamily &family, double r_db);

/// Rayleigh closed form: 1 - exp(-pi * 10^(r/10) / 4).
double rayleigh_cdf_rel_db(double r_db);

/// Zero-mean Gaussian in the dB domain: Phi(r / sigma).
double lognormal_db_cdf(double sigma_db, double r_db);

/// Statistical floor for fits; guards degenerate synthetic inputs.
inline constexpr std::size_t kMinFitSamples = 30;

/// Fits one family to dB-about-mean samples. LogNormalDb takes sigma from
/// the sample standard deviation; Ricean minimizes the mean squared CDF
/// error over a K grid [-5, 30] dB (step 0.5) refined by golden section to
/// 0.01 dB; Rayleigh is parameter free.
FadingFit fit_family(std::span<const double> r_db_samples, FamilyKind kind);

/// Fits all three families and ranks them by ascending KS statistic.
/// Ties break deterministically in the order Ricean, LogNormalDb, Rayleigh.
std::vector<FadingFit> select_best_family(std::span<const double> r_db_samples);

/// Strictly increasing quantile function of a family's amplitude
/// distribution; Ricean is table backed (built once at construction).
class FamilyQuantile {
  public:
    explicit FamilyQuantile(const FadingFamily &family);

    double operator()(double p) const;

    const FadingFamily &family() const { return family_; }

  private:
    FadingFamily family_;
    std::vector<double> table_a_;   // Ricean only
    std::vector<double> table_cdf_;
};

/// E[A^2] of a family's amplitude distribution in the scale used by
/// FamilyQuantile (closed forms).
double family_mean_square(const FadingFamily &family);

} // namespace smallscale

#endif

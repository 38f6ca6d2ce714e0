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

#include "smallscale/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smallscale/errors.hpp"
#include "smallscale/model.hpp"
#include "smallscale/numerics.hpp"

namespace smallscale {

namespace {

constexpr std::size_t kFitGridPoints = 201;
constexpr double kPanelsPerUnitAmplitude = 64.0;

// Composite Simpson over [lo, hi] with panel width tied to the unit
// diffuse scale of the Ricean PDF.
template <class F> double panel_simpson(F &&f, double lo, double hi) {
    if (!(hi > lo))
        return 0.0;
    int panels = std::clamp(
        static_cast<int>(std::ceil((hi - lo) * kPanelsPerUnitAmplitude)), 2, 4096);
    panels += panels & 1; // composite Simpson needs an even subinterval count
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
    return sum * h / 3.0;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

} // namespace

const char *family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Ricean:
        return "ricean";
    case FamilyKind::LogNormalDb:
        return "lognormal_db";
    case FamilyKind::Rayleigh:
        return "rayleigh";
    }
    return "?";
}

FamilyKind parse_family(const std::string &name) {
    if (name == "ricean")
        return FamilyKind::Ricean;
    if (name == "lognormal_db")
        return FamilyKind::LogNormalDb;
    if (name == "rayleigh")
        return FamilyKind::Rayleigh;
    throw ValidationError("unknown fading family \"" + name + "\"");
}

void FadingFamily::validate() const {
    switch (kind) {
    case FamilyKind::Ricean:
        if (!std::isfinite(k_db))
            throw ValidationError("ricean: K must be finite");
        break;
    case FamilyKind::LogNormalDb:
        if (!(sigma_db > 0.0) || !std::isfinite(sigma_db))
            throw ValidationError("lognormal_db: sigma must be positive");
        break;
    case FamilyKind::Rayleigh:
        break;
    }
}

double FadingFamily::parameter() const {
    switch (kind) {
    case FamilyKind::Ricean:
        return k_db;
    case FamilyKind::LogNormalDb:
        return sigma_db;
    case FamilyKind::Rayleigh:
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

Ecdf::Ecdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
    if (sorted_.empty())
        throw ValidationError("ecdf: empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double estimate_k_dominant(std::span<const double> path_powers_mw) {
    if (path_powers_mw.size() < 2)
        throw ValidationError("estimate_k_dominant: need at least 2 paths");
    double sum = 0.0, peak = 0.0;
    for (double p : path_powers_mw) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ValidationError("estimate_k_dominant: powers must be non-negative");
        sum += p;
        peak = std::max(peak, p);
    }
    if (!(peak > 0.0))
        throw ValidationError("estimate_k_dominant: all path powers are zero");
    const double residual = sum - peak;
    if (!(residual > 0.0))
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak / residual);
}

RiceanAmplitude::RiceanAmplitude(double k_db) : k_db_(k_db) {
    if (!std::isfinite(k_db))
        throw ValidationError("ricean: K must be finite");
    const double k_linear = db_to_linear(k_db);
    nu_ = std::sqrt(2.0 * k_linear);
    const auto integrand = [this](double a) { return a * pdf(a); };
    mean_ = num::adaptive_simpson(integrand, 0.0, upper_bound(), 1e-11 * (nu_ + 2.0));
}

double RiceanAmplitude::pdf(double a) const {
    if (!(a > 0.0))
        return 0.0;
    const double d = a - nu_;
    // a * exp(-(a^2+nu^2)/2) * I0(a*nu), written with the scaled Bessel so
    // large non-centralities cannot overflow.
    return a * std::exp(-0.5 * d * d) * num::i0_scaled(a * nu_);
}

double RiceanAmplitude::cdf(double a) const {
    if (!(a > 0.0))
        return 0.0;
    const double hi = std::min(a, upper_bound());
    const double value =
        num::adaptive_simpson([this](double x) { return pdf(x); }, 0.0, hi,
                              1e-12 * (nu_ + 2.0));
    return std::min(value, 1.0);
}

double RiceanAmplitude::cdf_rel_db(double r_db) const {
    return cdf(mean_ * std::pow(10.0, r_db / 20.0));
}

std::vector<double>
RiceanAmplitude::cdf_rel_db_grid(std::span<const double> r_db_ascending) const {
    std::vector<double> amplitudes;
    amplitudes.reserve(r_db_ascending.size());
    for (double r : r_db_ascending)
        amplitudes.push_back(mean_ * std::pow(10.0, r / 20.0));
    return cdf_at_sorted(amplitudes);
}

std::vector<double>
RiceanAmplitude::cdf_at_sorted(std::span<const double> amplitudes_ascending) const {
    std::vector<double> out;
    out.reserve(amplitudes_ascending.size());
    const auto f = [this](double x) { return pdf(x); };

    if (amplitudes_ascending.size() <= 512) {
        double cum = 0.0, prev = 0.0;
        for (double a : amplitudes_ascending) {
            const double hi = std::min(a, upper_bound());
            if (hi > prev) {
                cum += panel_simpson(f, prev, hi);
                prev = hi;
            }
            out.push_back(std::min(cum, 1.0));
        }
        return out;
    }

    // Large sample sets: one fine cumulative grid, then monotone linear
    // interpolation.
    const double hi = upper_bound();
    const std::size_t knots = 4097;
    std::vector<double> cum(knots, 0.0);
    const double h = hi / static_cast<double>(knots - 1);
    for (std::size_t i = 1; i < knots; ++i) {
        const double x0 = h * static_cast<double>(i - 1);
        const double x1 = h * static_cast<double>(i);
        cum[i] = cum[i - 1] + (x1 - x0) / 6.0 * (pdf(x0) + 4.0 * pdf(0.5 * (x0 + x1)) + pdf(x1));
    }
    for (double a : amplitudes_ascending) {
        if (a <= 0.0) {
            out.push_back(0.0);
            continue;
        }
        if (a >= hi) {
            out.push_back(std::min(cum.back(), 1.0));
            continue;
        }
        const double pos = a / h;
        const std::size_t idx = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(idx);
        out.push_back(std::min(cum[idx] + t * (cum[idx + 1] - cum[idx]), 1.0));
    }
    return out;
}

double rayleigh_cdf_rel_db(double r_db) {
    return 1.0 - std::exp(-M_PI * std::pow(10.0, r_db / 10.0) / 4.0);
}

double lognormal_db_cdf(double sigma_db, double r_db) {
    return num::normal_cdf(r_db / sigma_db);
}

double model_cdf(const FadingFamily &family, double r_db) {
    family.validate();
    switch (family.kind) {
    case FamilyKind::Ricean:
        return RiceanAmplitude(family.k_db).cdf_rel_db(r_db);
    case FamilyKind::LogNormalDb:
        return lognormal_db_cdf(family.sigma_db, r_db);
    case FamilyKind::Rayleigh:
        return rayleigh_cdf_rel_db(r_db);
    }
    return 0.0;
}

namespace {

double ks_statistic(std::span<const double> model_cdf_at_sorted) {
    const std::size_t n = model_cdf_at_sorted.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        const double lo = static_cast<double>(i) / static_cast<double>(n);
        d = std::max(d, std::max(hi - model_cdf_at_sorted[i], model_cdf_at_sorted[i] - lo));
    }
    return d;
}

double grid_mmse(std::span<const double> empirical, std::span<const double> model) {
    double sum = 0.0;
    for (std::size_t i = 0; i < empirical.size(); ++i) {
        const double diff = empirical[i] - model[i];
        sum += diff * diff;
    }
    return sum / static_cast<double>(empirical.size());
}

struct FitContext {
    std::vector<double> sorted;   // ascending r values
    std::vector<double> grid;     // uniform r grid
    std::vector<double> emp_grid; // empirical CDF on the grid
};

FitContext make_context(std::span<const double> samples) {
    if (samples.size() < kMinFitSamples)
        throw ValidationError("fit_family: need at least " + std::to_string(kMinFitSamples) +
                              " samples, got " + std::to_string(samples.size()));
    FitContext ctx;
    ctx.sorted.assign(samples.begin(), samples.end());
    std::sort(ctx.sorted.begin(), ctx.sorted.end());
    if (ctx.sorted.front() == ctx.sorted.back())
        throw DegenerateError("fit_family: zero variance in samples");
    ctx.grid = uniform_grid(ctx.sorted.front(), ctx.sorted.back(), kFitGridPoints);
    ctx.emp_grid.reserve(kFitGridPoints);
    for (double r : ctx.grid) {
        const auto it = std::upper_bound(ctx.sorted.begin(), ctx.sorted.end(), r);
        ctx.emp_grid.push_back(static_cast<double>(it - ctx.sorted.begin()) /
                               static_cast<double>(ctx.sorted.size()));
    }
    return ctx;
}

FadingFit fit_ricean(const FitContext &ctx) {
    constexpr double k_lo = -5.0, k_hi = 30.0, k_step = 0.5;

    const auto objective = [&ctx](double k_db) {
        const RiceanAmplitude model(k_db);
        return grid_mmse(ctx.emp_grid, model.cdf_rel_db_grid(ctx.grid));
    };

    double best_k = k_lo;
    double best_mse = std::numeric_limits<double>::infinity();
    for (double k = k_lo; k <= k_hi + 1e-9; k += k_step) {
        const double mse = objective(k);
        if (mse < best_mse) {
            best_mse = mse;
            best_k = k;
        }
    }
    const double lo = std::max(k_lo, best_k - k_step);
    const double hi = std::min(k_hi, best_k + k_step);
    const double k_fit = num::golden_min(objective, lo, hi, 0.01);

    const RiceanAmplitude model(k_fit);
    std::vector<double> amplitudes;
    amplitudes.reserve(ctx.sorted.size());
    for (double r : ctx.sorted)
        amplitudes.push_back(model.mean() * std::pow(10.0, r / 20.0));

    FadingFit fit;
    fit.family = FadingFamily::ricean(k_fit);
    fit.fit_error = grid_mmse(ctx.emp_grid, model.cdf_rel_db_grid(ctx.grid));
    fit.ks_stat = ks_statistic(model.cdf_at_sorted(amplitudes));
    fit.sample_count = ctx.sorted.size();
    return fit;
}

FadingFit fit_lognormal(const FitContext &ctx) {
    const std::size_t n = ctx.sorted.size();
    double mean = 0.0;
    for (double r : ctx.sorted)
        mean += r;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double r : ctx.sorted)
        ss += (r - mean) * (r - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sigma > 0.0))
        throw DegenerateError("fit_family: zero variance in samples");

    std::vector<double> model_grid(ctx.grid.size());
    for (std::size_t i = 0; i < ctx.grid.size(); ++i)
        model_grid[i] = lognormal_db_cdf(sigma, ctx.grid[i]);
    std::vector<double> model_sorted(n);
    for (std::size_t i = 0; i < n; ++i)
        model_sorted[i] = lognormal_db_cdf(sigma, ctx.sorted[i]);

    FadingFit fit;
    fit.family = FadingFamily::lognormal_db(sigma);
    fit.fit_error = grid_mmse(ctx.emp_grid, model_grid);
    fit.ks_stat = ks_statistic(model_sorted);
    fit.sample_count = n;
    return fit;
}

FadingFit fit_rayleigh(const FitContext &ctx) {
    std::vector<double> model_grid(ctx.grid.size());
    for (std::size_t i = 0; i < ctx.grid.size(); ++i)
        model_grid[i] = rayleigh_cdf_rel_db(ctx.grid[i]);
    std::vector<double> model_sorted(ctx.sorted.size());
    for (std::size_t i = 0; i < ctx.sorted.size(); ++i)
        model_sorted[i] = rayleigh_cdf_rel_db(ctx.sorted[i]);

    FadingFit fit;
    fit.family = FadingFamily::rayleigh();
    fit.fit_error = grid_mmse(ctx.emp_grid, model_grid);
    fit.ks_stat = ks_statistic(model_sorted);
    fit.sample_count = ctx.sorted.size();
    return fit;
}

} // namespace

FadingFit fit_family(std::span<const double> r_db_samples, FamilyKind kind) {
    const FitContext ctx = make_context(r_db_samples);
    switch (kind) {
    case FamilyKind::Ricean:
        return fit_ricean(ctx);
    case FamilyKind::LogNormalDb:
        return fit_lognormal(ctx);
    case FamilyKind::Rayleigh:
        return fit_rayleigh(ctx);
    }
    throw UsageError("fit_family: unknown family kind");
}

std::vector<FadingFit> select_best_family(std::span<const double> r_db_samples) {
    const FitContext ctx = make_context(r_db_samples);
    std::vector<FadingFit> fits{fit_ricean(ctx), fit_lognormal(ctx), fit_rayleigh(ctx)};
    std::stable_sort(fits.begin(), fits.end(),
                     [](const FadingFit &x, const FadingFit &y) { return x.ks_stat < y.ks_stat; });
    return fits;
}

FamilyQuantile::FamilyQuantile(const FadingFamily &family) : family_(family) {
    family_.validate();
    if (family_.kind != FamilyKind::Ricean)
        return;
    const RiceanAmplitude model(family_.k_db);
    const double lo = std::max(0.0, model.nu() - 10.0);
    const double hi = model.nu() + 10.0;
    const std::size_t knots = 4097;
    table_a_.resize(knots);
    for (std::size_t i = 0; i < knots; ++i)
        table_a_[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(knots - 1);
    table_cdf_ = model.cdf_at_sorted(table_a_);
}

double FamilyQuantile::operator()(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw UsageError("quantile: p must lie strictly in (0, 1)");
    switch (family_.kind) {
    case FamilyKind::LogNormalDb:
        return std::pow(10.0, family_.sigma_db * num::normal_quantile(p) / 20.0);
    case FamilyKind::Rayleigh:
        return std::sqrt(-2.0 * std::log1p(-p));
    case FamilyKind::Ricean:
        break;
    }
    if (p <= table_cdf_.front()) {
        // Interpolate toward zero amplitude; p > 0 keeps the result positive.
        const double f0 = table_cdf_.front();
        return f0 > 0.0 ? table_a_.front() * (p / f0) + 1e-300 : table_a_.front() + 1e-300;
    }
    if (p >= table_cdf_.back())
        return table_a_.back();
    const auto it = std::lower_bound(table_cdf_.begin(), table_cdf_.end(), p);
    const std::size_t idx = static_cast<std::size_t>(it - table_cdf_.begin());
    const double f0 = table_cdf_[idx - 1], f1 = table_cdf_[idx];
    if (!(f1 > f0))
        return table_a_[idx];
    const double t = (p - f0) / (f1 - f0);
    return table_a_[idx - 1] + t * (table_a_[idx] - table_a_[idx - 1]);
}

double family_mean_square(const FadingFamily &family) {
    family.validate();
    switch (family.kind) {
    case FamilyKind::Ricean:
        return 2.0 * db_to_linear(family.k_db) + 2.0; // nu^2 + 2 sigma^2, sigma = 1
    case FamilyKind::LogNormalDb: {
        const double c = family.sigma_db * std::log(10.0) / 20.0;
        return std::exp(2.0 * c * c);
    }
    case FamilyKind::Rayleigh:
        return 2.0;
    }
    return 0.0;
}

} // namespace smallscale

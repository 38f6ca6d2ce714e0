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

#ifndef SMALLSCALE_NUMERICS_HPP
#define SMALLSCALE_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace smallscale::num {

/// Standard normal CDF, accurate over the full double range.
double normal_cdf(double x);

/// Standard normal quantile (Wichura's AS241 PPND16), p in (0, 1).
double normal_quantile(double p);

/// Exponentially scaled modified Bessel function exp(-z) * I0(z), z >= 0.
/// Power series below z = 18, asymptotic expansion above; near machine
/// precision over the whole range.
double i0_scaled(double z);

/// 64-bit mix function (splitmix64 finalizer).
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent substream seed: splitmix64 of the base seed
/// advanced by (index + 1) golden-ratio increments.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Deterministic random source. Normal variates are produced by inverse
/// CDF so the output stream is identical across platforms and standard
/// library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in the open interval (0, 1).
    double uniform() {
        const std::uint64_t bits = engine_();
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal variate.
    double normal() { return normal_quantile(uniform()); }

  private:
    std::mt19937_64 engine_;
};

/// Adaptive Simpson quadrature with Richardson correction. `tol` is an
/// absolute tolerance on the whole interval.
template <class F> double adaptive_simpson(F &&f, double lo, double hi, double tol) {
    struct Impl {
        F &f;
        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth >= 48 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };
    if (!(hi > lo))
        return 0.0;
    Impl impl{f};
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.recurse(lo, hi, fa, fm, fb, whole, tol, 0);
}

/// Golden-section minimization of a unimodal function on [lo, hi].
/// Deterministic; returns the bracket midpoint once its width is below tol.
template <class F> double golden_min(F &&f, double lo, double hi, double tol) {
    static const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace smallscale::num

#endif

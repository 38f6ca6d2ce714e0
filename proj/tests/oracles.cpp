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

#include "oracles.hpp"

#include <cmath>

namespace oracles {

namespace {

double window_mean(const std::vector<double> &x, std::size_t start, std::size_t count) {
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k)
        sum += x[start + k];
    return sum / static_cast<double>(count);
}

} // namespace

std::vector<double> autocorr_brute_force(const std::vector<double> &amplitudes,
                                         std::size_t max_m) {
    const std::size_t n = amplitudes.size();
    std::vector<double> rho(max_m + 1);
    rho[0] = 1.0;
    for (std::size_t m = 1; m <= max_m; ++m) {
        const std::size_t count = n - m;
        const double mean_head = window_mean(amplitudes, 0, count);
        const double mean_tail = window_mean(amplitudes, m, count);

        double expectation_cross = 0.0;
        for (std::size_t k = 0; k < count; ++k)
            expectation_cross +=
                (amplitudes[k] - mean_head) * (amplitudes[k + m] - mean_tail);
        expectation_cross /= static_cast<double>(count);

        double expectation_head_sq = 0.0;
        for (std::size_t k = 0; k < count; ++k)
            expectation_head_sq +=
                (amplitudes[k] - mean_head) * (amplitudes[k] - mean_head);
        expectation_head_sq /= static_cast<double>(count);

        double expectation_tail_sq = 0.0;
        for (std::size_t k = 0; k < count; ++k)
            expectation_tail_sq +=
                (amplitudes[k + m] - mean_tail) * (amplitudes[k + m] - mean_tail);
        expectation_tail_sq /= static_cast<double>(count);

        rho[m] = expectation_cross / std::sqrt(expectation_head_sq * expectation_tail_sq);
    }
    return rho;
}

double bessel_i_scaled(int order, double z) {
    // 2^17 panels over [0, pi]; the integrand is smooth and bounded by 1.
    const std::size_t panels = 1u << 17;
    const double h = M_PI / static_cast<double>(panels);
    const auto f = [&](double t) {
        return std::exp(z * (std::cos(t) - 1.0)) * std::cos(order * t);
    };
    double sum = f(0.0) + f(M_PI);
    for (std::size_t i = 1; i < panels; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
    return sum * h / (3.0 * M_PI);
}

double ricean_mean_closed_form(double k_db) {
    const double k = std::pow(10.0, k_db / 10.0);
    const double i0e = bessel_i_scaled(0, 0.5 * k);
    const double i1e = bessel_i_scaled(1, 0.5 * k);
    return std::sqrt(M_PI / 2.0) * ((1.0 + k) * i0e + k * i1e);
}

} // namespace oracles

/*  Copyright 2026 The cscomp Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

#include "cscomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/random.hpp"

namespace cscomp {

std::vector<int> default_subcarriers() {
    std::vector<int> out;
    for (int f = -312; f <= 311; f += 12) out.push_back(f);
    return out;
}

SensingMatrix build_sensing_matrix(int os, int fft_size, int max_delay_taps,
                                   std::vector<int> subcarriers) {
    if (os < 1) throw ParameterError("oversampling factor must be >= 1");
    if (fft_size < 1 || max_delay_taps < 1) {
        throw ParameterError("fft_size and max_delay_taps must be positive");
    }
    if (subcarriers.empty()) throw ParameterError("subcarrier list is empty");
    const int half = fft_size / 2;
    for (int f : subcarriers) {
        if (f < -half || f >= half) {
            throw ParameterError("subcarrier " + std::to_string(f) + " outside [-fft_size/2, fft_size/2)");
        }
    }

    SensingMatrix out;
    out.os = os;
    out.fft_size = fft_size;
    out.max_delay_taps = max_delay_taps;
    out.subcarriers = std::move(subcarriers);

    const Index m = static_cast<Index>(out.subcarriers.size());
    const Index n = static_cast<Index>(max_delay_taps) * os + 1;
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(fft_size));
    const double period = static_cast<double>(fft_size) * os;
    out.entries.resize(m, n);
    for (Index col = 0; col < n; ++col) {
        for (Index row = 0; row < m; ++row) {
            // Reduce f*n modulo the period in integers so the phase stays accurate for large n.
            const long long prod = static_cast<long long>(out.subcarriers[row]) * col;
            const long long wrapped = prod % static_cast<long long>(period);
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(wrapped) / period;
            out.entries(row, col) = std::polar(amplitude, phase);
        }
    }
    return out;
}

CsiMatrix generate_sparse_sample(Index n, Index p, Index s, std::uint64_t seed) {
    if (s < 1 || s > n) throw ParameterError("sparsity must satisfy 1 <= s <= n");
    if (p < 1) throw ParameterError("column count must be >= 1");
    Rng rng(seed);
    // Partial Fisher-Yates: the first s entries form a uniform s-subset.
    std::vector<Index> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), Index{0});
    for (Index i = 0; i < s; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(pick(rng))]);
    }
    rows.resize(static_cast<std::size_t>(s));
    std::sort(rows.begin(), rows.end());

    CsiMatrix x = CsiMatrix::Zero(n, p);
    for (Index r : rows) {
        for (Index j = 0; j < p; ++j) x(r, j) = complex_gaussian(rng);
    }
    return x;
}

namespace {

void add_noise(MeasurementMatrix& y, std::optional<double> snr_db, Rng& rng) {
    if (!snr_db) return;
    const double signal = y.squaredNorm();
    if (signal == 0.0) return;
    const double variance =
        signal / (std::pow(10.0, *snr_db / 10.0) * static_cast<double>(y.size()));
    y += complex_gaussian_matrix(rng, y.rows(), y.cols(), variance);
}

}  // namespace

MeasurementMatrix synthesize_measurements(const CMatrix& f, const CsiMatrix& x,
                                          std::optional<double> snr_db, std::uint64_t seed) {
    if (f.cols() != x.rows()) throw ParameterError("synthesize_measurements: F and X incompatible");
    MeasurementMatrix y = multiply_rows(f, x, row_support(x));
    Rng rng(seed);
    add_noise(y, snr_db, rng);
    return y;
}

MeasurementMatrix offgrid_response(const OffGridChannel& channel, const SensingMatrix& f) {
    const Index m = f.rows();
    const Index s = static_cast<Index>(channel.delays.size());
    if (channel.gains.rows() != s) throw ParameterError("off-grid gains/delays mismatch");
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(f.fft_size));
    CMatrix steering(m, s);
    for (Index k = 0; k < s; ++k) {
        const double taps = channel.delays[static_cast<std::size_t>(k)] * f.max_delay_taps;
        for (Index row = 0; row < m; ++row) {
            const double phase = -2.0 * std::numbers::pi * f.subcarriers[row] * taps / f.fft_size;
            steering(row, k) = std::polar(amplitude, phase);
        }
    }
    return steering * channel.gains;
}

OffGridSample generate_offgrid_channel(Index p, Index s, const SensingMatrix& f,
                                       std::optional<double> snr_db, std::uint64_t seed) {
    if (s < 1 || p < 1) throw ParameterError("off-grid channel needs s >= 1 and p >= 1");
    Rng rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    OffGridChannel channel;
    channel.snr_db = snr_db;
    while (static_cast<Index>(channel.delays.size()) < s) {
        const double t = uniform(rng);
        if (t <= 0.0) continue;
        if (std::find(channel.delays.begin(), channel.delays.end(), t) != channel.delays.end()) continue;
        channel.delays.push_back(t);
    }
    std::sort(channel.delays.begin(), channel.delays.end());

    channel.gains.resize(s, p);
    for (Index k = 0; k < s; ++k) {
        const double power = s > 1 ? std::pow(10.0, -static_cast<double>(k) / static_cast<double>(s - 1)) : 1.0;
        for (Index j = 0; j < p; ++j) channel.gains(k, j) = complex_gaussian(rng, power);
    }

    OffGridSample out{offgrid_response(channel, f), std::move(channel)};
    add_noise(out.y, snr_db, rng);
    return out;
}

MeasurementMatrix normalize_measurements(const MeasurementMatrix& y) {
    const double norm = y.norm();
    if (!(norm > 0.0)) throw DegenerateInputError("cannot normalize a zero measurement matrix");
    return y / norm;
}

}  // namespace cscomp

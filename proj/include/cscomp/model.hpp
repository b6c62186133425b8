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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cscomp/types.hpp"

namespace cscomp {

/// Partial oversampled DFT operator mapping delay taps to measured subcarriers.
///
/// entries(m, n) = exp(-2*pi*i * f_m * n / (fft_size * os)) / sqrt(fft_size) for
/// n = 0 .. max_delay_taps * os, so the delay grid has spacing 1/os taps.
struct SensingMatrix {
    CMatrix entries;
    int os = 1;
    int fft_size = 1024;
    int max_delay_taps = 256;
    std::vector<int> subcarriers;

    Index rows() const { return entries.rows(); }
    Index cols() const { return entries.cols(); }
};

/// Every 12th subcarrier out of [-312, 311]: 52 values starting at -312.
std::vector<int> default_subcarriers();

SensingMatrix build_sensing_matrix(int os, int fft_size = 1024, int max_delay_taps = 256,
                                   std::vector<int> subcarriers = default_subcarriers());

/// N x P matrix with exactly s nonzero rows (uniform without replacement) whose
/// entries are standard circular complex Gaussians.
CsiMatrix generate_sparse_sample(Index n, Index p, Index s, std::uint64_t seed);

/// Y = F X + noise. The noise is scaled so that ||F X||^2 / E||noise||^2 equals
/// 10^(snr_db / 10); no snr means a noiseless observation.
MeasurementMatrix synthesize_measurements(const CMatrix& f, const CsiMatrix& x,
                                          std::optional<double> snr_db, std::uint64_t seed);

/// Multipath channel with continuous (off-grid) delays shared by all P paths.
struct OffGridChannel {
    std::vector<double> delays;  // in (0, 1), fraction of the delay span, strictly increasing
    CMatrix gains;               // s x P
    std::optional<double> snr_db;
};

struct OffGridSample {
    MeasurementMatrix y;
    OffGridChannel channel;
};

/// Draws an off-grid channel with s taps and an exponentially decaying power
/// profile (the last tap carries 1/10 of the first tap's power), observed on the
/// subcarriers of `f` with additive noise at snr_db.
OffGridSample generate_offgrid_channel(Index p, Index s, const SensingMatrix& f,
                                       std::optional<double> snr_db, std::uint64_t seed);

/// Noiseless frequency response of `channel` on the subcarriers of `f`.
MeasurementMatrix offgrid_response(const OffGridChannel& channel, const SensingMatrix& f);

/// Y / ||Y|| (Frobenius). Throws DegenerateInputError for a zero matrix.
MeasurementMatrix normalize_measurements(const MeasurementMatrix& y);

}  // namespace cscomp

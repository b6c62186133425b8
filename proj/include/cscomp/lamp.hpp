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

// Learned AMP for row-sparse recovery. Layer t maps (X_{t-1}, V_{t-1}) to
//
//   lambda_t = alpha_t / sqrt(M) * ||V_{t-1}||
//   X_t      = beta_t * Shrink(X_{t-1} + B V_{t-1}; lambda_t)
//   V_t      = Y - F X_t + (beta_t / M) * ||X_t||_{2,0} * V_{t-1}
//
// with one matrix B shared by every layer. The chain starts at X_0 = 0 and
// V_0 = Y, so a freshly initialized network (B = F^H, alpha = beta = 1)
// reproduces AMP iteration for iteration.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cscomp/types.hpp"

namespace cscomp {

struct LampModel {
    std::vector<double> alpha;  // threshold scales, one per layer
    std::vector<double> beta;   // output / Onsager scales, one per layer
    CMatrix b;                  // N x M, shared by all layers
    CMatrix f;                  // M x N sensing matrix the model was built for
    double gamma = 0.5;         // loss mix used for training

    std::size_t layers() const { return alpha.size(); }
    Index n() const { return f.cols(); }
    Index m() const { return f.rows(); }
};

/// B = F^H, alpha_t = beta_t = 1.
LampModel make_lamp_model(const CMatrix& f, std::size_t layers, double gamma = 0.5);

/// Real scalars the optimizer sees: 2T + 2 N M.
std::size_t trainable_parameter_count(const LampModel& model);

/// Flat parameter vector: alpha (T), beta (T), then B as interleaved (re, im), column-major.
std::vector<double> pack_parameters(const LampModel& model);
void unpack_parameters(LampModel& model, std::span<const double> params);

struct LayerState {
    CMatrix x;                  // X_t
    CMatrix v;                  // V_t
    double lambda = 0.0;        // threshold applied in this layer
    double onsager = 0.0;       // beta_t * ||X_t||_{2,0} / M
    Index active_rows = 0;      // ||X_t||_{2,0}
    CMatrix pre_shrink;         // X_{t-1} + B V_{t-1}
    RVector pre_shrink_norms;   // row l2 norms of pre_shrink
};

LayerState lamp_layer(const CMatrix& x_prev, const CMatrix& v_prev, const MeasurementMatrix& y,
                      double alpha, double beta, const CMatrix& b, const CMatrix& f);

struct LampOutput {
    CsiMatrix estimate;
    std::vector<LayerState> states;  // states[0] is (X_0 = 0, V_0 = Y); states[t] is layer t
};

/// Runs the first `layers` layers (all when empty).
LampOutput lamp_forward(const LampModel& model, const MeasurementMatrix& y,
                        std::optional<std::size_t> layers = std::nullopt);

/// (1 - gamma) ||X - X_hat||^2 + gamma ||Y - F X_hat||^2.
double training_loss(const CsiMatrix& x_hat, const CsiMatrix& x_true, const MeasurementMatrix& y,
                     const CMatrix& f, double gamma);

/// Smallest |row norm - lambda| over all layers; distance to a shrinkage kink.
double min_threshold_margin(const std::vector<LayerState>& states);

struct LampGradients {
    RVector alpha;
    RVector beta;
    CMatrix b;  // dL/dRe(B) + i dL/dIm(B)

    static LampGradients zeros(const LampModel& model);
    std::vector<double> packed() const;
};

/// Reverse-mode gradient of training_loss(lamp_forward(model, y), x_true) with
/// gamma = model.gamma. The row count in the Onsager term is treated as
/// constant; shrinkage is differentiated on its smooth pieces, with rows at or
/// below the threshold taking the zero branch. Layers beyond states.size() - 1
/// receive zero gradient.
LampGradients lamp_backward(const LampModel& model, const std::vector<LayerState>& states,
                            const CsiMatrix& x_true, const MeasurementMatrix& y);

/// Adds weight * gradient into `acc`.
void accumulate_lamp_gradients(const LampModel& model, const std::vector<LayerState>& states,
                               const CsiMatrix& x_true, const MeasurementMatrix& y, double weight,
                               LampGradients& acc);

// ---------------------------------------------------------------------------

struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t step = 0;
    std::vector<double> m;
    std::vector<double> v;

    AdamState() = default;
    AdamState(std::size_t size, double learning_rate)
        : lr(learning_rate), m(size, 0.0), v(size, 0.0) {}
};

/// One bias-corrected ADAM update. Entries with trainable[i] == 0 keep their
/// value and their moments; an empty mask trains everything.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               std::span<const std::uint8_t> trainable = {});

// ---------------------------------------------------------------------------

struct TrainingSample {
    CsiMatrix x;
    MeasurementMatrix y;
};

/// Fresh synthetic pair with ||Y|| = 1; X is scaled by the same factor so Y = F X + noise still holds.
TrainingSample draw_training_sample(const CMatrix& f, Index s, Index p, std::optional<double> snr_db,
                                    std::uint64_t seed);

struct TrainConfig {
    std::size_t layers = 20;
    std::size_t pre_epochs = 2;
    std::size_t post_epochs = 5;
    std::size_t batches_per_epoch = 1000;
    std::size_t batch_size = 64;
    double gamma = 0.5;
    double lr = 1e-3;
    Index s = 10;
    Index p = 16;
    std::optional<double> snr_db = 20.0;
    std::uint64_t seed = 0;

    void validate(const CMatrix& f) const;
};

struct TrainEvent {
    std::size_t layer;     // 1-based layer being added
    bool fine_tune;        // false while pretraining the new layer
    std::size_t epoch;
    double mean_loss;      // over the epoch's batches
};

struct TrainResult {
    LampModel model;
    std::vector<double> batch_losses;  // mean sample loss of every batch, in order
};

/// Layer-wise schedule: for t = 1..T, train (alpha_t, beta_t, B) for pre_epochs
/// with earlier layers' scalars frozen, then all of layers 1..t for post_epochs.
TrainResult train(const CMatrix& f, const TrainConfig& cfg,
                  const std::function<void(const TrainEvent&)>& progress = {});

/// Mean training_loss of the model over the given samples.
double mean_loss(const LampModel& model, std::span<const TrainingSample> samples);

// ---------------------------------------------------------------------------
// LMP1: "LMP1", u32 T, u32 N, u32 M, f64 gamma, T f64 alpha, T f64 beta,
// then B column-major as (re, im) f64 pairs; all little-endian.

void write_lamp_model(std::ostream& out, const LampModel& model);
/// `f` supplies the sensing matrix; its shape must match the stored N and M.
LampModel read_lamp_model(std::istream& in, const CMatrix& f);

void save_model(const LampModel& model, const std::filesystem::path& path);
LampModel load_model(const std::filesystem::path& path, const CMatrix& f);

}  // namespace cscomp

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

#include <cmath>

#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/model.hpp"
#include "cscomp/parallel.hpp"
#include "cscomp/random.hpp"

namespace cscomp {

namespace {

// Samples are reduced in fixed-size chunks, in order, so results do not depend
// on the number of worker threads.
constexpr std::size_t kChunk = 8;

enum Phase : std::uint64_t { kPretrain = 0, kFineTune = 1 };

std::vector<std::uint8_t> stage_mask(const LampModel& model, std::size_t layer, bool fine_tune) {
    const std::size_t t = model.layers();
    std::vector<std::uint8_t> mask(trainable_parameter_count(model), 0);
    const std::size_t first = fine_tune ? 0 : layer - 1;
    for (std::size_t i = first; i < layer; ++i) {
        mask[i] = 1;      // alpha
        mask[t + i] = 1;  // beta
    }
    std::fill(mask.begin() + static_cast<std::ptrdiff_t>(2 * t), mask.end(), 1);  // shared B
    return mask;
}

struct BatchResult {
    double loss = 0.0;
    std::vector<double> grad;
};

BatchResult batch_gradient(const LampModel& model, std::size_t depth, const TrainConfig& cfg,
                           std::uint64_t batch_seed) {
    const std::size_t chunks = (cfg.batch_size + kChunk - 1) / kChunk;
    std::vector<BatchResult> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        LampGradients acc = LampGradients::zeros(model);
        double loss = 0.0;
        const std::size_t end = std::min(cfg.batch_size, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const TrainingSample sample =
                draw_training_sample(model.f, cfg.s, cfg.p, cfg.snr_db, derive_seed(batch_seed, {i}));
            const LampOutput out = lamp_forward(model, sample.y, depth);
            loss += training_loss(out.estimate, sample.x, sample.y, model.f, model.gamma);
            accumulate_lamp_gradients(model, out.states, sample.x, sample.y, 1.0, acc);
        }
        parts[c].loss = loss;
        parts[c].grad = acc.packed();
    });

    BatchResult total{0.0, std::vector<double>(trainable_parameter_count(model), 0.0)};
    for (const auto& part : parts) {
        total.loss += part.loss;
        for (std::size_t i = 0; i < total.grad.size(); ++i) total.grad[i] += part.grad[i];
    }
    const double inv = 1.0 / static_cast<double>(cfg.batch_size);
    total.loss *= inv;
    for (double& g : total.grad) g *= inv;
    return total;
}

}  // namespace

TrainingSample draw_training_sample(const CMatrix& f, Index s, Index p, std::optional<double> snr_db,
                                    std::uint64_t seed) {
    TrainingSample sample;
    sample.x = generate_sparse_sample(f.cols(), p, s, derive_seed(seed, {0}));
    sample.y = synthesize_measurements(f, sample.x, snr_db, derive_seed(seed, {1}));
    const double norm = sample.y.norm();
    if (!(norm > 0.0)) throw DegenerateInputError("training sample has zero measurements");
    sample.y = normalize_measurements(sample.y);
    sample.x /= norm;
    return sample;
}

void TrainConfig::validate(const CMatrix& f) const {
    if (layers < 1) throw ParameterError("train: layers must be >= 1");
    if (batches_per_epoch < 1 || batch_size < 1) throw ParameterError("train: empty batches");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("train: gamma must lie in [0, 1]");
    if (!(lr > 0.0)) throw ParameterError("train: learning rate must be positive");
    if (s < 1 || s > f.cols() || p < 1) throw ParameterError("train: need 1 <= s <= N and p >= 1");
}

TrainResult train(const CMatrix& f, const TrainConfig& cfg, const std::function<void(const TrainEvent&)>& progress) {
    cfg.validate(f);
    TrainResult result{make_lamp_model(f, cfg.layers, cfg.gamma), {}};
    LampModel& model = result.model;
    std::vector<double> params = pack_parameters(model);
    std::size_t global_batch = 0;

    for (std::size_t layer = 1; layer <= cfg.layers; ++layer) {
        // New layers start at alpha = beta = 1 and pick up the current shared B.
        for (const bool fine_tune : {false, true}) {
            const std::size_t epochs = fine_tune ? cfg.post_epochs : cfg.pre_epochs;
            const std::vector<std::uint8_t> mask = stage_mask(model, layer, fine_tune);
            AdamState adam(params.size(), cfg.lr);
            for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
                double epoch_loss = 0.0;
                for (std::size_t batch = 0; batch < cfg.batches_per_epoch; ++batch) {
                    const std::uint64_t batch_seed = derive_seed(
                        cfg.seed, {layer, fine_tune ? kFineTune : kPretrain, epoch, batch});
                    BatchResult br = batch_gradient(model, layer, cfg, batch_seed);
                    ++global_batch;
                    if (!std::isfinite(br.loss)) {
                        throw TrainingError("non-finite training loss", layer, global_batch);
                    }
                    adam_step(params, br.grad, adam, mask);
                    unpack_parameters(model, params);
                    result.batch_losses.push_back(br.loss);
                    epoch_loss += br.loss;
                }
                if (progress) {
                    progress({layer, fine_tune, epoch + 1, epoch_loss / static_cast<double>(cfg.batches_per_epoch)});
                }
            }
        }
    }
    return result;
}

}  // namespace cscomp

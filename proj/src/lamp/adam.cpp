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

namespace cscomp {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               std::span<const std::uint8_t> trainable) {
    if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw ParameterError("adam_step: size mismatch");
    }
    if (!trainable.empty() && trainable.size() != params.size()) throw ParameterError("adam_step: mask size mismatch");

    ++state.step;
    const double step = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(state.beta1, step);
    const double c2 = 1.0 - std::pow(state.beta2, step);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!trainable.empty() && !trainable[i]) continue;
        const double g = grads[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

}  // namespace cscomp

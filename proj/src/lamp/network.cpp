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
#include <cstring>
#include <limits>

#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/linalg.hpp"

namespace cscomp {

LampModel make_lamp_model(const CMatrix& f, std::size_t layers, double gamma) {
    if (layers < 1) throw ParameterError("L-AMP needs at least one layer");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
    if (f.size() == 0) throw ParameterError("empty sensing matrix");
    LampModel model;
    model.alpha.assign(layers, 1.0);
    model.beta.assign(layers, 1.0);
    model.b = f.adjoint();
    model.f = f;
    model.gamma = gamma;
    return model;
}

std::size_t trainable_parameter_count(const LampModel& model) {
    return 2 * model.layers() + 2 * static_cast<std::size_t>(model.b.size());
}

std::vector<double> pack_parameters(const LampModel& model) {
    const std::size_t t = model.layers();
    std::vector<double> out(trainable_parameter_count(model));
    std::copy(model.alpha.begin(), model.alpha.end(), out.begin());
    std::copy(model.beta.begin(), model.beta.end(), out.begin() + static_cast<std::ptrdiff_t>(t));
    std::memcpy(out.data() + 2 * t, model.b.data(), sizeof(double) * 2 * static_cast<std::size_t>(model.b.size()));
    return out;
}

void unpack_parameters(LampModel& model, std::span<const double> params) {
    const std::size_t t = model.layers();
    if (params.size() != trainable_parameter_count(model)) throw ParameterError("parameter vector size mismatch");
    std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(t), model.alpha.begin());
    std::copy(params.begin() + static_cast<std::ptrdiff_t>(t), params.begin() + static_cast<std::ptrdiff_t>(2 * t),
              model.beta.begin());
    std::memcpy(static_cast<void*>(model.b.data()), params.data() + 2 * t, sizeof(double) * 2 * static_cast<std::size_t>(model.b.size()));
}

LayerState lamp_layer(const CMatrix& x_prev, const CMatrix& v_prev, const MeasurementMatrix& y,
                      double alpha, double beta, const CMatrix& b, const CMatrix& f) {
    if (b.rows() != f.cols() || b.cols() != f.rows()) throw ParameterError("lamp_layer: B must be N x M");
    if (x_prev.rows() != f.cols() || v_prev.rows() != f.rows() || y.rows() != f.rows() ||
        x_prev.cols() != y.cols() || v_prev.cols() != y.cols()) {
        throw ParameterError("lamp_layer: inconsistent shapes");
    }
    const double m = static_cast<double>(f.rows());
    LayerState st;
    st.lambda = alpha / std::sqrt(m) * v_prev.norm();
    st.pre_shrink = x_prev + multiply(b, v_prev);
    st.pre_shrink_norms = row_norms_squared(st.pre_shrink).array().sqrt();

    RVector factors(st.pre_shrink_norms.size());
    for (Index i = 0; i < factors.size(); ++i) {
        const double r = st.pre_shrink_norms(i);
        factors(i) = r > st.lambda ? beta * ((r - st.lambda) / r) : 0.0;
    }
    st.x = st.pre_shrink;
    scale_rows(st.x, factors);

    const RowSupport support = row_support(st.x);
    st.active_rows = static_cast<Index>(support.size());
    st.onsager = beta * static_cast<double>(st.active_rows) / m;
    st.v = y - multiply_rows(f, st.x, support) + st.onsager * v_prev;
    return st;
}

LampOutput lamp_forward(const LampModel& model, const MeasurementMatrix& y, std::optional<std::size_t> layers) {
    if (y.rows() != model.m()) throw ParameterError("lamp_forward: Y must have M rows");
    const std::size_t depth = layers.value_or(model.layers());
    if (depth > model.layers()) throw ParameterError("lamp_forward: more layers requested than the model has");

    LampOutput out;
    out.states.reserve(depth + 1);
    LayerState initial;
    initial.x = CMatrix::Zero(model.n(), y.cols());
    initial.v = y;
    out.states.push_back(std::move(initial));
    for (std::size_t t = 0; t < depth; ++t) {
        const LayerState& prev = out.states.back();
        out.states.push_back(lamp_layer(prev.x, prev.v, y, model.alpha[t], model.beta[t], model.b, model.f));
    }
    out.estimate = out.states.back().x;
    return out;
}

double training_loss(const CsiMatrix& x_hat, const CsiMatrix& x_true, const MeasurementMatrix& y,
                     const CMatrix& f, double gamma) {
    if (x_hat.rows() != x_true.rows() || x_hat.cols() != x_true.cols() || f.cols() != x_hat.rows() ||
        f.rows() != y.rows() || y.cols() != x_hat.cols()) {
        throw ParameterError("training_loss: inconsistent shapes");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
    const double coef = (x_true - x_hat).squaredNorm();
    const double fit = (y - multiply_rows(f, x_hat, row_support(x_hat))).squaredNorm();
    return (1.0 - gamma) * coef + gamma * fit;
}

double min_threshold_margin(const std::vector<LayerState>& states) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t < states.size(); ++t) {
        const auto& st = states[t];
        for (Index i = 0; i < st.pre_shrink_norms.size(); ++i) {
            margin = std::min(margin, std::abs(st.pre_shrink_norms(i) - st.lambda));
        }
    }
    return margin;
}

double mean_loss(const LampModel& model, std::span<const TrainingSample> samples) {
    if (samples.empty()) throw ParameterError("mean_loss: no samples");
    double total = 0.0;
    for (const auto& s : samples) {
        total += training_loss(lamp_forward(model, s.y).estimate, s.x, s.y, model.f, model.gamma);
    }
    return total / static_cast<double>(samples.size());
}

}  // namespace cscomp

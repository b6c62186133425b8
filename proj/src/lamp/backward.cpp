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

#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/linalg.hpp"

// Complex quantities are differentiated as (re, im) pairs. For a real loss L and
// complex Z the stored gradient is G_Z = dL/dRe(Z) + i dL/dIm(Z); under this
// convention Z2 = A Z1 gives G_Z1 = A^H G_Z2 and a real scale c gives dc = Re<Z, G>.

namespace cscomp {

LampGradients LampGradients::zeros(const LampModel& model) {
    LampGradients g;
    g.alpha = RVector::Zero(static_cast<Index>(model.layers()));
    g.beta = RVector::Zero(static_cast<Index>(model.layers()));
    g.b = CMatrix::Zero(model.b.rows(), model.b.cols());
    return g;
}

std::vector<double> LampGradients::packed() const {
    const auto t = static_cast<std::size_t>(alpha.size());
    std::vector<double> out(2 * t + 2 * static_cast<std::size_t>(b.size()));
    std::copy(alpha.data(), alpha.data() + t, out.begin());
    std::copy(beta.data(), beta.data() + t, out.begin() + static_cast<std::ptrdiff_t>(t));
    std::memcpy(out.data() + 2 * t, b.data(), sizeof(double) * 2 * static_cast<std::size_t>(b.size()));
    return out;
}

void accumulate_lamp_gradients(const LampModel& model, const std::vector<LayerState>& states,
                               const CsiMatrix& x_true, const MeasurementMatrix& y, double weight,
                               LampGradients& acc) {
    if (states.empty() || states.size() > model.layers() + 1) throw ParameterError("lamp_backward: bad state list");
    const std::size_t depth = states.size() - 1;
    const CMatrix& f = model.f;
    const double m = static_cast<double>(model.m());
    const double gamma = model.gamma;
    const CMatrix& x_out = states.back().x;
    if (x_true.rows() != x_out.rows() || x_true.cols() != x_out.cols() || y.rows() != model.m() ||
        y.cols() != x_out.cols()) {
        throw ParameterError("lamp_backward: inconsistent shapes");
    }

    // dL/dX_T
    CMatrix grad_x = -2.0 * weight * (1.0 - gamma) * (x_true - x_out);
    if (gamma != 0.0) {
        const CMatrix residual = y - multiply_rows(f, x_out, row_support(x_out));
        grad_x -= 2.0 * weight * gamma * adjoint_multiply(f, residual);
    }
    CMatrix grad_v = CMatrix::Zero(y.rows(), y.cols());
    bool grad_v_live = false;

    for (std::size_t t = depth; t >= 1; --t) {
        const LayerState& st = states[t];
        const LayerState& prev = states[t - 1];
        const double beta = model.beta[t - 1];
        const double alpha = model.alpha[t - 1];

        // V_t = Y - F X_t + c V_{t-1}, c = beta * k / M with k held constant
        CMatrix grad_v_prev = CMatrix::Zero(y.rows(), y.cols());
        if (grad_v_live) {
            grad_x -= adjoint_multiply(f, grad_v);
            acc.beta(static_cast<Index>(t - 1)) += static_cast<double>(st.active_rows) / m * real_inner(prev.v, grad_v);
            grad_v_prev = st.onsager * grad_v;
        }

        // X_t = beta * S,  S = Shrink(U, lambda)
        const Index n = st.pre_shrink.rows();
        CMatrix grad_u = CMatrix::Zero(n, y.cols());
        double grad_lambda = 0.0;
        double grad_beta = 0.0;
        for (Index i = 0; i < n; ++i) {
            const double r = st.pre_shrink_norms(i);
            if (!(r > st.lambda)) continue;
            const auto u = st.pre_shrink.row(i);
            const auto gx = grad_x.row(i);
            const double shrink = (r - st.lambda) / r;
            // dbeta += Re<S_i, G_X_i>
            const double u_dot_gx = (u.conjugate().cwiseProduct(gx)).sum().real();
            grad_beta += shrink * u_dot_gx;
            // G_S = beta G_X; d(u - lambda u / r) adjoint
            const double u_dot_gs = beta * u_dot_gx;
            grad_u.row(i) = beta * shrink * gx + (st.lambda * u_dot_gs / (r * r * r)) * u;
            grad_lambda -= u_dot_gs / r;
        }
        acc.beta(static_cast<Index>(t - 1)) += grad_beta;

        // lambda = alpha ||V_{t-1}|| / sqrt(M)
        const double v_norm = prev.v.norm();
        acc.alpha(static_cast<Index>(t - 1)) += grad_lambda * v_norm / std::sqrt(m);
        if (v_norm > 0.0) grad_v_prev += (grad_lambda * alpha / (std::sqrt(m) * v_norm)) * prev.v;

        // U = X_{t-1} + B V_{t-1}
        accumulate_outer(acc.b, grad_u, prev.v);
        grad_v_prev += adjoint_multiply(model.b, grad_u);

        grad_x = std::move(grad_u);
        grad_v = std::move(grad_v_prev);
        grad_v_live = true;
    }
}

LampGradients lamp_backward(const LampModel& model, const std::vector<LayerState>& states,
                            const CsiMatrix& x_true, const MeasurementMatrix& y) {
    LampGradients g = LampGradients::zeros(model);
    accumulate_lamp_gradients(model, states, x_true, y, 1.0, g);
    return g;
}

}  // namespace cscomp

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

#include <chrono>
#include <cmath>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

namespace {

// sign(z) * max(0, |z| - lambda), with sign(0) = 0
cplx soft_threshold(cplx z, double lambda) {
    const double magnitude = std::abs(z);
    if (magnitude <= lambda) return {0.0, 0.0};
    return z * ((magnitude - lambda) / magnitude);
}

void check_amp_args(const CMatrix& f, Index y_rows, double alpha, int iters) {
    if (f.rows() != y_rows) throw ParameterError("amp: F and y incompatible");
    if (iters < 1) throw ParameterError("amp: iters must be >= 1");
    if (!(alpha > 0.0)) throw ParameterError("amp: alpha must be positive");
}

}  // namespace

AmpResult amp(const CMatrix& f, const CVector& y, double alpha, int iters) {
    check_amp_args(f, y.rows(), alpha, iters);
    const double m = static_cast<double>(f.rows());
    AmpResult out;
    CVector x = CVector::Zero(f.cols());
    CVector v_prev = CVector::Zero(f.rows());
    for (int t = 0; t < iters; ++t) {
        const double b = static_cast<double>((x.array() != cplx(0.0, 0.0)).count()) / m;
        const CVector v = y - f * x + b * v_prev;
        const double lambda = alpha / std::sqrt(m) * v.norm();
        const CVector r = x + f.adjoint() * v;
        for (Index i = 0; i < x.size(); ++i) x(i) = soft_threshold(r(i), lambda);
        out.onsager.push_back(b);
        out.lambdas.push_back(lambda);
        v_prev = v;
    }
    out.estimate = std::move(x);
    return out;
}

SolverResult amp_mmv(const CMatrix& f, const MeasurementMatrix& y, double alpha, int iters) {
    const auto start = std::chrono::steady_clock::now();
    check_amp_args(f, y.rows(), alpha, iters);
    const double m = static_cast<double>(f.rows());

    SolverResult result;
    result.algorithm = "amp_mmv";
    CMatrix x = CMatrix::Zero(f.cols(), y.cols());
    CMatrix fx = CMatrix::Zero(f.rows(), y.cols());
    CMatrix v_prev = CMatrix::Zero(f.rows(), y.cols());
    result.residual_history.push_back(y.norm());

    for (int t = 0; t < iters; ++t) {
        const double b = static_cast<double>(row_count(x)) / m;
        CMatrix v = y - fx + b * v_prev;
        const double lambda = alpha / std::sqrt(m) * v.norm();
        x = row_shrink(x + adjoint_multiply(f, v), lambda);
        fx = multiply_rows(f, x, row_support(x));
        result.trace.lambdas.push_back(lambda);
        result.residual_history.push_back((y - fx).norm());
        ++result.iterations;
        v_prev = std::move(v);
    }

    result.converged = true;
    result.estimate = std::move(x);
    result.support = row_support(result.estimate);
    result.final_residual = result.residual_history.back();
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cscomp

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

#include "cscomp/postprocess.hpp"

#include <algorithm>
#include <chrono>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"

namespace cscomp {

namespace {

RowSupport top_nonzero_rows(const CsiMatrix& x_hat, Index s) {
    const RVector norms = row_norms_squared(x_hat);
    RowSupport top = top_indices(norms, s);
    std::erase_if(top, [&](Index i) { return !(norms(i) > 0.0); });
    return top;
}

}  // namespace

CsiMatrix truncate_rows(const CsiMatrix& x_hat, Index s) {
    CsiMatrix out = CsiMatrix::Zero(x_hat.rows(), x_hat.cols());
    for (Index i : top_nonzero_rows(x_hat, s)) out.row(i) = x_hat.row(i);
    return out;
}

SolverResult prune_and_refit(const CsiMatrix& x_hat, const CMatrix& f, const MeasurementMatrix& y, Index s) {
    const auto start = std::chrono::steady_clock::now();
    if (x_hat.rows() != f.cols() || y.rows() != f.rows() || x_hat.cols() != y.cols()) {
        throw ParameterError("prune_and_refit: inconsistent shapes");
    }
    if (s < 1 || s > std::min(f.rows(), f.cols())) throw ParameterError("prune_and_refit: need 1 <= s <= min(M, N)");

    SolverResult result;
    result.algorithm = "prune_and_refit";
    result.support = top_nonzero_rows(x_hat, s);
    LeastSquaresFit fit = least_squares_on_support(f, y, result.support);
    result.estimate = std::move(fit.estimate);
    result.rank_deficient = fit.rank_deficient;
    result.final_residual = (y - multiply_rows(f, result.estimate, result.support)).norm();
    result.residual_history = {result.final_residual};
    result.converged = true;
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cscomp

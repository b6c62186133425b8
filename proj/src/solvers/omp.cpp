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

#include <algorithm>
#include <chrono>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

SolverResult omp_mmv(const CMatrix& f, const MeasurementMatrix& y, Index s, double eps) {
    const auto start = std::chrono::steady_clock::now();
    if (f.rows() != y.rows()) throw ParameterError("omp_mmv: F and Y incompatible");
    if (s < 1 || s > std::min(f.rows(), f.cols())) throw ParameterError("omp_mmv: need 1 <= s <= min(M, N)");

    SolverResult result;
    result.algorithm = "omp";
    result.estimate = CsiMatrix::Zero(f.cols(), y.cols());
    result.converged = true;

    RowSupport selected;
    MeasurementMatrix residual = y;
    result.residual_history.push_back(residual.norm());

    for (Index k = 0; k < s; ++k) {
        const RVector scores = row_norms_squared(adjoint_multiply(f, residual));
        Index best = 0;
        for (Index i = 1; i < scores.size(); ++i) {
            if (scores(i) > scores(best)) best = i;
        }
        if (std::find(selected.begin(), selected.end(), best) != selected.end() || scores(best) < eps) {
            break;
        }
        selected.push_back(best);
        RowSupport sorted = selected;
        std::sort(sorted.begin(), sorted.end());
        LeastSquaresFit fit = least_squares_on_support(f, y, sorted);
        result.rank_deficient = fit.rank_deficient;
        result.estimate = std::move(fit.estimate);
        residual = y - multiply_rows(f, result.estimate, sorted);
        result.residual_history.push_back(residual.norm());
        ++result.iterations;
    }

    result.support = selected;
    std::sort(result.support.begin(), result.support.end());
    result.final_residual = result.residual_history.back();
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cscomp

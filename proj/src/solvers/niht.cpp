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
#include <cmath>
#include <iterator>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

namespace {

// Backtracking cannot loop forever in exact arithmetic, but guard against
// degenerate floating-point cases.
constexpr int kMaxHalvings = 200;

// Above this N the Gram matrix costs too much memory.
constexpr Index kMaxGramColumns = 2048;

}  // namespace

SolverResult niht(const CMatrix& f, const MeasurementMatrix& y, Index s, const NihtOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    if (f.rows() != y.rows()) throw ParameterError("niht: F and Y incompatible");
    if (s < 1 || s > f.cols()) throw ParameterError("niht: need 1 <= s <= N");
    if (!(opts.c > 0.0 && opts.c < 1.0)) throw ParameterError("niht: c must lie in (0, 1)");
    if (opts.max_iters < 1) throw ParameterError("niht: max_iters must be positive");

    SolverResult result;
    result.algorithm = "niht";
    CMatrix x = CMatrix::Zero(f.cols(), y.cols());
    RowSupport support = top_indices(row_norms_squared(adjoint_multiply(f, y)), s);
    RowSupport x_support;  // nonzero rows of x

    double residual = y.norm();
    result.residual_history.push_back(residual);

    // Gradient F^H (Y - F X). Once the iterations spent would have paid for
    // F^H F, switch to F^H Y - (F^H F) X, which only touches the s rows of X.
    const bool gram_helps = s < f.rows() && f.cols() <= kMaxGramColumns;
    const int gram_after = static_cast<int>(f.cols() / std::max<Index>(y.cols(), 1));
    CMatrix gram;
    CMatrix fhy;
    auto gradient_at = [&](int k) -> CMatrix {
        if (gram_helps && k >= gram_after) {
            if (gram.size() == 0) {
                gram = adjoint_multiply(f, f);
                fhy = adjoint_multiply(f, y);
            }
            return fhy - multiply_rows(gram, x, x_support);
        }
        return adjoint_multiply(f, y - multiply_rows(f, x, x_support));
    };

    for (int k = 0; k < opts.max_iters; ++k) {
        if (residual == 0.0) {
            result.converged = true;
            break;
        }
        const CMatrix gradient = gradient_at(k);
        double num = 0.0;
        for (Index i : support) num += gradient.row(i).squaredNorm();
        const double den = multiply_rows(f, gradient, support).squaredNorm();
        if (num == 0.0 || den == 0.0) {
            result.converged = true;  // stationary on the current support
            break;
        }
        double mu = num / den;
        result.trace.initial_steps.push_back(mu);

        // T_s(x + mu g) kept compact as (rows, values); x is zero off x_support,
        // so off-support scores are mu^2 |g_i|^2.
        const RVector g_norms = row_norms_squared(gradient);
        RowSupport candidate_support;
        CMatrix candidate;
        auto threshold_at = [&](double step) {
            RVector score = (step * step) * g_norms;
            for (Index i : x_support) score(i) = (x.row(i) + step * gradient.row(i)).squaredNorm();
            candidate_support.clear();
            for (Index i : top_indices(score, s)) {
                if (score(i) > 0.0) candidate_support.push_back(i);
            }
            candidate.resize(static_cast<Index>(candidate_support.size()), y.cols());
            for (std::size_t r = 0; r < candidate_support.size(); ++r) {
                const Index i = candidate_support[r];
                candidate.row(static_cast<Index>(r)) = x.row(i) + step * gradient.row(i);
            }
        };
        threshold_at(mu);
        if (candidate_support != support) {
            for (int h = 0; h < kMaxHalvings; ++h) {
                // candidate - x over the union of both supports
                RowSupport rows;
                std::set_union(candidate_support.begin(), candidate_support.end(), x_support.begin(),
                               x_support.end(), std::back_inserter(rows));
                CMatrix diff(static_cast<Index>(rows.size()), y.cols());
                std::size_t c = 0;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    const Index i = rows[r];
                    diff.row(static_cast<Index>(r)) = -x.row(i);
                    if (c < candidate_support.size() && candidate_support[c] == i) {
                        diff.row(static_cast<Index>(r)) += candidate.row(static_cast<Index>(c++));
                    }
                }
                const double omega =
                    diff.squaredNorm() / (f(Eigen::all, rows) * diff).squaredNorm();
                if (!(mu > (1.0 - opts.c) * omega)) break;
                mu *= 0.5;
                threshold_at(mu);
            }
        }
        result.trace.step_sizes.push_back(mu);

        for (Index i : x_support) x.row(i).setZero();
        for (std::size_t r = 0; r < candidate_support.size(); ++r) {
            x.row(candidate_support[r]) = candidate.row(static_cast<Index>(r));
        }
        x_support = candidate_support;
        support = std::move(candidate_support);
        const double previous = residual;
        residual = (y - multiply_rows(f, x, x_support)).norm();
        if (!std::isfinite(residual)) throw SolverError("niht: non-finite residual", result.iterations + 1);
        result.residual_history.push_back(residual);
        ++result.iterations;
        if (residual == 0.0 || std::abs(previous - residual) < opts.tol * previous) {
            result.converged = true;
            break;
        }
    }

    result.support = x_support;
    LeastSquaresFit fit = least_squares_on_support(f, y, x_support);
    result.estimate = std::move(fit.estimate);
    result.rank_deficient = fit.rank_deficient;
    result.final_residual = (y - multiply_rows(f, result.estimate, x_support)).norm();
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cscomp

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
#include <limits>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

void FistaConfig::validate() const {
    if (!(lambda_start_factor > 0.0 && lambda_start_factor < 1.0)) {
        throw ParameterError("fista: lambda_start_factor must lie in (0, 1)");
    }
    if (!(lambda_decay > 0.0 && lambda_decay < 1.0)) throw ParameterError("fista: lambda_decay must lie in (0, 1)");
    if (!(lambda_min_factor > 0.0 && lambda_min_factor <= 1.0)) {
        throw ParameterError("fista: lambda_min_factor must lie in (0, 1]");
    }
    if (inner_iters < 1 || max_iters < 1) throw ParameterError("fista: iteration counts must be positive");
    if (!(tol >= 0.0)) throw ParameterError("fista: tol must be nonnegative");
    if (lipschitz && !(*lipschitz > 0.0)) throw ParameterError("fista: lipschitz constant must be positive");
}

double fista_objective(const CMatrix& f, const MeasurementMatrix& y, const CMatrix& x, double lambda) {
    const double fit = (y - multiply_rows(f, x, row_support(x))).squaredNorm();
    return 0.5 * fit + lambda * row_norms_squared(x).array().sqrt().sum();
}

FistaIteration::FistaIteration(const CMatrix& f, const MeasurementMatrix& y, double lipschitz,
                               CMatrix x0, bool restart_enabled)
    : f_(f), y_(y), fhy_(adjoint_multiply(f, y)), step_(1.0 / lipschitz),
      restart_enabled_(restart_enabled), x_(std::move(x0)) {
    if (!(lipschitz > 0.0)) throw ParameterError("fista: lipschitz constant must be positive");
    if (x_.rows() != f.cols() || x_.cols() != y.cols()) throw ParameterError("fista: bad initial iterate");
    z_ = x_;
    fx_ = multiply_rows(f_, x_, row_support(x_));
    fz_ = fx_;
}

void FistaIteration::reset_momentum() {
    t_ = 1.0;
    z_ = x_;
    fz_ = fx_;
}

double FistaIteration::step() {
    // gradient of 0.5 ||Y - F Z||^2 is F^H F Z - F^H Y
    // F Z is carried along as the same affine combination of F X_k that forms Z.
    const CMatrix gradient = adjoint_multiply(f_, fz_) - fhy_;
    CMatrix next = row_shrink(z_ - step_ * gradient, lambda_ * step_);
    CMatrix f_next = multiply_rows(f_, next, row_support(next));

    restarted_ = restart_enabled_ && real_inner(z_ - next, next - x_) > 0.0;
    if (restarted_) {
        t_ = 1.0;
        last_alpha_ = 1.0;
        z_ = next;
        fz_ = f_next;
    } else {
        const double t_next = 0.5 * (1.0 + std::sqrt(4.0 * t_ * t_ + 1.0));
        last_alpha_ = 1.0 + (t_ - 1.0) / t_next;
        z_ = x_ + last_alpha_ * (next - x_);
        fz_ = fx_ + last_alpha_ * (f_next - fx_);
        t_ = t_next;
    }
    const double scale = std::max(x_.norm(), std::numeric_limits<double>::min());
    const double change = (next - x_).norm() / scale;
    x_ = std::move(next);
    fx_ = std::move(f_next);
    return change;
}

namespace {

struct Runner {
    const CMatrix& f;
    const MeasurementMatrix& y;
    SolverResult& result;

    void record(const FistaIteration& it) {
        const double residual = (y - it.fx()).norm();
        if (!std::isfinite(residual)) throw SolverError("fista: non-finite iterate", result.iterations);
        result.residual_history.push_back(residual);
        result.trace.lambdas.push_back(it.lambda());
        result.trace.objective.push_back(
            0.5 * residual * residual + it.lambda() * row_norms_squared(it.x()).array().sqrt().sum());
        if (it.last_step_restarted()) result.trace.restarts.push_back(result.iterations);
    }

    // Runs up to `budget` iterations; true when the relative change fell below tol.
    bool run(FistaIteration& it, int budget, double tol) {
        for (int k = 0; k < budget; ++k) {
            const double change = it.step();
            ++result.iterations;
            record(it);
            if (!std::isfinite(change)) throw SolverError("fista: non-finite iterate", result.iterations);
            if (change < tol) return true;
        }
        return false;
    }

    void finish(const FistaIteration& it, std::chrono::steady_clock::time_point start) {
        result.estimate = it.x();
        result.support = row_support(result.estimate);
        result.final_residual = result.residual_history.back();
        result.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace

SolverResult fista_fixed(const CMatrix& f, const MeasurementMatrix& y, double lambda, int max_iters,
                         double tol, bool restart_enabled, std::optional<double> lipschitz) {
    const auto start = std::chrono::steady_clock::now();
    if (f.rows() != y.rows()) throw ParameterError("fista: F and Y incompatible");
    if (!(lambda >= 0.0)) throw ParameterError("fista: lambda must be nonnegative");
    SolverResult result;
    result.algorithm = "fista";
    result.residual_history.push_back(y.norm());
    FistaIteration it(f, y, lipschitz ? *lipschitz : lipschitz_estimate(f),
                      CMatrix::Zero(f.cols(), y.cols()), restart_enabled);
    it.set_lambda(lambda);
    Runner runner{f, y, result};
    result.converged = runner.run(it, max_iters, tol);
    runner.finish(it, start);
    return result;
}

SolverResult fista(const CMatrix& f, const MeasurementMatrix& y, const FistaConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    if (f.rows() != y.rows()) throw ParameterError("fista: F and Y incompatible");

    SolverResult result;
    result.algorithm = "fista";
    result.residual_history.push_back(y.norm());

    const double max_row = std::sqrt(row_norms_squared(adjoint_multiply(f, y)).maxCoeff());
    const double lambda_start = cfg.lambda_start_factor * max_row;
    FistaIteration it(f, y, cfg.lipschitz ? *cfg.lipschitz : lipschitz_estimate(f),
                      CMatrix::Zero(f.cols(), y.cols()), cfg.restart_enabled);
    Runner runner{f, y, result};
    if (lambda_start == 0.0) {
        result.converged = true;  // Y orthogonal to every atom: X = 0 is optimal
        runner.finish(it, start);
        return result;
    }

    const double lambda_min = cfg.lambda_min_factor * lambda_start;
    double lambda = lambda_start;
    while (result.iterations < static_cast<std::size_t>(cfg.max_iters)) {
        it.set_lambda(lambda);
        it.reset_momentum();
        const bool last_stage = lambda <= lambda_min;
        const int remaining = cfg.max_iters - static_cast<int>(result.iterations);
        const bool settled = runner.run(it, last_stage ? remaining : std::min(cfg.inner_iters, remaining), cfg.tol);
        if (last_stage) {
            result.converged = settled;
            break;
        }
        lambda *= cfg.lambda_decay;
    }
    runner.finish(it, start);
    return result;
}

}  // namespace cscomp

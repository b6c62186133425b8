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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cscomp/types.hpp"

namespace cscomp {

/// Per-iteration diagnostics; each solver fills the parts that apply to it.
struct SolverTrace {
    std::vector<double> step_sizes;        // NIHT: accepted stepsize per iteration
    std::vector<double> initial_steps;     // NIHT: stepsize before backtracking
    std::vector<double> objective;         // FISTA: penalized objective at X_k
    std::vector<double> lambdas;           // FISTA / AMP: threshold per iteration
    std::vector<std::size_t> restarts;     // FISTA: iterations at which momentum was reset
};

struct SolverResult {
    std::string algorithm;
    CsiMatrix estimate;
    RowSupport support;
    std::size_t iterations = 0;
    /// ||Y - F X_k|| starting with the initial iterate, so size() == iterations + 1.
    std::vector<double> residual_history;
    double final_residual = 0.0;  // ||Y - F * estimate||
    bool converged = false;
    bool rank_deficient = false;
    double wall_time_ms = 0.0;
    SolverTrace trace;
};

/// "algorithm,s,os,iterations,final_residual,wall_time_ms"
std::string solver_csv_header();
std::string solver_csv_row(const SolverResult& r, Index s, int os);

// ---------------------------------------------------------------------------
// Shared operators

/// Row-wise shrinkage, the proximal map of lambda * ||.||_{2,1}:
/// row i scaled by max(0, ||x_i|| - lambda) / ||x_i||; zero rows stay zero.
CMatrix row_shrink(const CMatrix& x, double lambda);

/// Keeps the s rows of largest l2 norm (ties to the lower index), zeroes the rest.
CMatrix hard_threshold_rows(const CMatrix& x, Index s);

struct LeastSquaresFit {
    CsiMatrix estimate;
    bool rank_deficient = false;
};

/// argmin ||Y - F X|| over X supported on `support`. A rank-deficient F(:, support)
/// falls back to the minimum-norm solution and sets rank_deficient.
LeastSquaresFit least_squares_on_support(const CMatrix& f, const MeasurementMatrix& y,
                                         const RowSupport& support);

/// Largest eigenvalue of F^H F by power iteration (upper bound used as the
/// FISTA Lipschitz constant). Iterates at least `iters` times and continues
/// until the Rayleigh quotient settles.
double lipschitz_estimate(const CMatrix& f, int iters = 100);

// ---------------------------------------------------------------------------
// Greedy and thresholding solvers

/// Simultaneous OMP: at most s atoms, each chosen by the largest
/// sum_j |F(:, i)^H R(:, j)|^2, followed by a least-squares refit.
SolverResult omp_mmv(const CMatrix& f, const MeasurementMatrix& y, Index s, double eps = 1e-12);

struct NihtOptions {
    double c = 0.1;
    int max_iters = 500;
    double tol = 1e-8;
};

/// Normalized iterative hard thresholding on rows, with backtracking. The final
/// iterate is refit by least squares on its support.
SolverResult niht(const CMatrix& f, const MeasurementMatrix& y, Index s, const NihtOptions& opts = {});

// ---------------------------------------------------------------------------
// FISTA for 0.5 ||Y - F X||^2 + lambda ||X||_{2,1}

struct FistaConfig {
    double lambda_start_factor = 0.9;
    double lambda_decay = 0.7;
    double lambda_min_factor = 1e-3;
    int inner_iters = 50;
    int max_iters = 1000;
    double tol = 1e-8;
    bool restart_enabled = true;
    std::optional<double> lipschitz;  // computed with lipschitz_estimate when empty

    void validate() const;
};

double fista_objective(const CMatrix& f, const MeasurementMatrix& y, const CMatrix& x, double lambda);

/// One FISTA run at a fixed lambda, exposed step by step.
class FistaIteration {
public:
    FistaIteration(const CMatrix& f, const MeasurementMatrix& y, double lipschitz,
                   CMatrix x0, bool restart_enabled);

    void set_lambda(double lambda) { lambda_ = lambda; }
    double lambda() const { return lambda_; }

    /// Advances one iteration. Returns the relative change ||X_{k+1} - X_k|| / max(||X_k||, tiny).
    double step();
    /// Drops momentum: t = 1 and Z = X.
    void reset_momentum();

    const CMatrix& x() const { return x_; }
    const CMatrix& z() const { return z_; }
    /// F X and F Z, maintained alongside the iterates.
    const CMatrix& fx() const { return fx_; }
    const CMatrix& fz() const { return fz_; }
    double t() const { return t_; }
    /// Extrapolation coefficient used for the last Z update.
    double last_alpha() const { return last_alpha_; }
    bool last_step_restarted() const { return restarted_; }

private:
    const CMatrix& f_;
    const MeasurementMatrix& y_;
    CMatrix fhy_;
    double step_;
    bool restart_enabled_;
    double lambda_ = 0.0;
    CMatrix x_;
    CMatrix z_;
    CMatrix fx_;
    CMatrix fz_;
    double t_ = 1.0;
    double last_alpha_ = 1.0;
    bool restarted_ = false;
};

/// FISTA at a fixed lambda from X = 0.
SolverResult fista_fixed(const CMatrix& f, const MeasurementMatrix& y, double lambda, int max_iters,
                         double tol, bool restart_enabled = true,
                         std::optional<double> lipschitz = std::nullopt);

/// FISTA with adaptive restart and geometric continuation on lambda.
SolverResult fista(const CMatrix& f, const MeasurementMatrix& y, const FistaConfig& cfg = {});

// ---------------------------------------------------------------------------
// Approximate message passing

struct AmpResult {
    CVector estimate;
    std::vector<double> lambdas;  // lambda_t, t = 0 .. iters-1
    std::vector<double> onsager;  // b_t
};

/// Single-vector AMP with a phase-preserving complex soft threshold.
AmpResult amp(const CMatrix& f, const CVector& y, double alpha, int iters);

/// AMP for row-sparse X: row shrinkage and b_t = ||X_t||_{2,0} / M.
SolverResult amp_mmv(const CMatrix& f, const MeasurementMatrix& y, double alpha, int iters);

}  // namespace cscomp

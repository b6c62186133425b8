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

#include <Eigen/QR>

#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

CMatrix row_shrink(const CMatrix& x, double lambda) {
    if (lambda < 0.0) throw ParameterError("row_shrink: lambda must be nonnegative");
    const RVector norms2 = row_norms_squared(x);
    RVector factors(norms2.size());
    for (Index i = 0; i < norms2.size(); ++i) {
        const double r = std::sqrt(norms2(i));
        factors(i) = r > lambda ? (r - lambda) / r : 0.0;
    }
    CMatrix out = x;
    scale_rows(out, factors);
    return out;
}

CMatrix hard_threshold_rows(const CMatrix& x, Index s) {
    if (s < 1 || s > x.rows()) throw ParameterError("hard_threshold_rows: need 1 <= s <= N");
    const RowSupport keep = top_indices(row_norms_squared(x), s);
    CMatrix out = CMatrix::Zero(x.rows(), x.cols());
    for (Index i : keep) out.row(i) = x.row(i);
    return out;
}

LeastSquaresFit least_squares_on_support(const CMatrix& f, const MeasurementMatrix& y,
                                         const RowSupport& support) {
    if (f.rows() != y.rows()) throw ParameterError("least_squares_on_support: F and Y incompatible");
    LeastSquaresFit fit{CsiMatrix::Zero(f.cols(), y.cols()), false};
    if (support.empty()) return fit;

    const Index k = static_cast<Index>(support.size());
    CMatrix sub(f.rows(), k);
    for (Index c = 0; c < k; ++c) {
        const Index col = support[static_cast<std::size_t>(c)];
        if (col < 0 || col >= f.cols()) throw ParameterError("support index out of range");
        sub.col(c) = f.col(col);
    }
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(sub);
    fit.rank_deficient = cod.rank() < k;
    const CMatrix coef = cod.solve(y);
    for (Index c = 0; c < k; ++c) fit.estimate.row(support[static_cast<std::size_t>(c)]) = coef.row(c);
    return fit;
}

double lipschitz_estimate(const CMatrix& f, int iters) {
    if (f.size() == 0 || f.squaredNorm() == 0.0) throw ParameterError("lipschitz_estimate: F is zero");
    // Iterate on the smaller Gram matrix; both share the nonzero spectrum.
    const bool wide = f.rows() <= f.cols();
    const Index dim = wide ? f.rows() : f.cols();
    CMatrix v(dim, 1);
    for (Index i = 0; i < dim; ++i) v(i, 0) = cplx(1.0 + 0.5 * std::sin(1.0 + i), 0.25 * std::cos(2.0 + i));
    v /= v.norm();

    auto apply = [&](const CMatrix& u) {
        return wide ? multiply(f, adjoint_multiply(f, u)) : adjoint_multiply(f, multiply(f, u));
    };

    constexpr int kHardCap = 20000;
    double estimate = 0.0;
    for (int it = 0; it < kHardCap; ++it) {
        const CMatrix w = apply(v);
        const double norm = w.norm();
        if (norm == 0.0) break;
        v = w / norm;
        const double previous = estimate;
        estimate = norm;
        if (it + 1 >= iters && std::abs(estimate - previous) <= 1e-13 * estimate) break;
    }
    return estimate;
}

}  // namespace cscomp

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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cscomp {

using cplx = std::complex<double>;
using Index = Eigen::Index;

/// Dense column-major complex matrix; the storage type for F, X, Y and B.
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RVector = Eigen::VectorXd;

/// Delay-domain coefficients X (N x P), row-sparse with a common support.
using CsiMatrix = CMatrix;
/// Frequency-domain observations Y (M x P).
using MeasurementMatrix = CMatrix;

/// Ascending list of row indices.
using RowSupport = std::vector<Index>;

/// Squared l2 norm of every row.
RVector row_norms_squared(const CMatrix& x);

/// Rows with nonzero l2 norm, ascending.
RowSupport row_support(const CMatrix& x);

/// ||X||_{2,0}: number of nonzero rows.
Index row_count(const CMatrix& x);

/// Indices of the `count` largest values, ties broken by lowest index. Result ascending.
RowSupport top_indices(const RVector& values, Index count);

}  // namespace cscomp

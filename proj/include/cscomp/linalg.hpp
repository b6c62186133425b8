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

#include "cscomp/types.hpp"

namespace cscomp {

/// A * X.
CMatrix multiply(const CMatrix& a, const CMatrix& x);

/// A(:, rows) * X(rows, :); rows of X outside `rows` are ignored.
CMatrix multiply_rows(const CMatrix& a, const CMatrix& x, const RowSupport& rows);

/// A^H * X.
CMatrix adjoint_multiply(const CMatrix& a, const CMatrix& x);

/// out += U * V^H.
void accumulate_outer(CMatrix& out, const CMatrix& u, const CMatrix& v);

/// X(i, :) *= factors(i).
void scale_rows(CMatrix& x, const RVector& factors);

/// Re <A, B> = Re tr(A^H B), the real inner product on complex matrices.
double real_inner(const CMatrix& a, const CMatrix& b);

}  // namespace cscomp

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

#include "cscomp/solvers.hpp"

namespace cscomp {

/// Keeps the s rows of x_hat with the largest l2 norm (ties to the lower index,
/// zero rows never selected) and refits them by least squares against Y.
SolverResult prune_and_refit(const CsiMatrix& x_hat, const CMatrix& f, const MeasurementMatrix& y, Index s);

/// Keeps the top-s rows of x_hat verbatim, without refitting.
CsiMatrix truncate_rows(const CsiMatrix& x_hat, Index s);

}  // namespace cscomp

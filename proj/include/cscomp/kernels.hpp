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

// Hot inner loops of the solvers and the unrolled network. Every kernel has a
// portable scalar reference and, on x86-64, an AVX2+FMA variant; the variant
// is chosen once at runtime from CPUID. Setting CSCOMP_SIMD=scalar forces the
// reference path.
//
// Matrices are column-major with leading dimension equal to the row count and
// complex entries stored as interleaved (re, im) doubles, which is the layout
// of Eigen::Matrix<std::complex<double>, ...>. The kernel translation units
// deliberately avoid Eigen and <complex> so that target-specific code never
// leaks into inline functions shared with the rest of the library.

#include <cstddef>
#include <string_view>

namespace cscomp::kernels {

enum class SimdLevel { Scalar, Avx2 };

struct KernelTable {
    SimdLevel level;
    std::string_view name;

    /// out(m x p) (+)= sum_{c in cols} A(:, c) * X(c, :).
    /// A is m x k, X is k x p. `cols` lists the participating columns of A;
    /// nullptr means all k of them. Overwrites `out` unless `accumulate`.
    void (*gemm)(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
                 const std::size_t* cols, std::size_t ncols, double* out, bool accumulate);

    /// out(k x p) = A^H X, with A m x k and X m x p.
    void (*gemm_adjoint)(const double* a, std::size_t m, std::size_t k, const double* x,
                         std::size_t p, double* out);

    /// out[i] = sum_j |X(i, j)|^2 for an n x p matrix.
    void (*row_abs2)(const double* x, std::size_t n, std::size_t p, double* out);

    /// X(i, j) *= factors[i] for an n x p matrix.
    void (*scale_rows)(double* x, std::size_t n, std::size_t p, const double* factors);
};

/// Table selected for this process (CPU features + CSCOMP_SIMD).
const KernelTable& active();

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_table();

}  // namespace cscomp::kernels

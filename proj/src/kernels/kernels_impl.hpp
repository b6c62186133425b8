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

namespace cscomp::kernels {

namespace scalar {
void gemm(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
          const std::size_t* cols, std::size_t ncols, double* out, bool accumulate);
void gemm_adjoint(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
                  double* out);
void row_abs2(const double* x, std::size_t n, std::size_t p, double* out);
void scale_rows(double* x, std::size_t n, std::size_t p, const double* factors);
}  // namespace scalar

#if defined(CSCOMP_HAVE_AVX2_KERNELS)
namespace avx2 {
void gemm(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
          const std::size_t* cols, std::size_t ncols, double* out, bool accumulate);
void gemm_adjoint(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
                  double* out);
void row_abs2(const double* x, std::size_t n, std::size_t p, double* out);
void scale_rows(double* x, std::size_t n, std::size_t p, const double* factors);
}  // namespace avx2
#endif

}  // namespace cscomp::kernels

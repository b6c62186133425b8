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

#include "kernels_impl.hpp"

namespace cscomp::kernels::scalar {

void gemm(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
          const std::size_t* cols, std::size_t ncols, double* out, bool accumulate) {
    const std::size_t count = cols ? ncols : k;
    for (std::size_t j = 0; j < p; ++j) {
        double* y = out + 2 * m * j;
        if (!accumulate) {
            for (std::size_t i = 0; i < 2 * m; ++i) y[i] = 0.0;
        }
        for (std::size_t q = 0; q < count; ++q) {
            const std::size_t c = cols ? cols[q] : q;
            const double xr = x[2 * (c + k * j)];
            const double xi = x[2 * (c + k * j) + 1];
            if (xr == 0.0 && xi == 0.0) continue;
            const double* col = a + 2 * m * c;
            for (std::size_t i = 0; i < m; ++i) {
                const double ar = col[2 * i];
                const double ai = col[2 * i + 1];
                y[2 * i] += ar * xr - ai * xi;
                y[2 * i + 1] += ar * xi + ai * xr;
            }
        }
    }
}

void gemm_adjoint(const double* a, std::size_t m, std::size_t k, const double* x, std::size_t p,
                  double* out) {
    for (std::size_t j = 0; j < p; ++j) {
        const double* xc = x + 2 * m * j;
        for (std::size_t c = 0; c < k; ++c) {
            const double* col = a + 2 * m * c;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double ar = col[2 * i];
                const double ai = col[2 * i + 1];
                const double br = xc[2 * i];
                const double bi = xc[2 * i + 1];
                re += ar * br + ai * bi;
                im += ar * bi - ai * br;
            }
            out[2 * (c + k * j)] = re;
            out[2 * (c + k * j) + 1] = im;
        }
    }
}

void row_abs2(const double* x, std::size_t n, std::size_t p, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double* col = x + 2 * n * j;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] += col[2 * i] * col[2 * i] + col[2 * i + 1] * col[2 * i + 1];
        }
    }
}

void scale_rows(double* x, std::size_t n, std::size_t p, const double* factors) {
    for (std::size_t j = 0; j < p; ++j) {
        double* col = x + 2 * n * j;
        for (std::size_t i = 0; i < n; ++i) {
            col[2 * i] *= factors[i];
            col[2 * i + 1] *= factors[i];
        }
    }
}

}  // namespace cscomp::kernels::scalar

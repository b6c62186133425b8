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

#include <immintrin.h>

#include <vector>

#define CSCOMP_AVX2 __attribute__((target("avx2,fma")))

namespace cscomp::kernels::avx2 {

namespace {

// [re0, im0, re1, im1] -> [im0, re0, im1, re1]
CSCOMP_AVX2 inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

CSCOMP_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// lane0 - lane1 + lane2 - lane3
CSCOMP_AVX2 inline double halt(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

CSCOMP_AVX2 void gemm(const double* a, std::size_t m, std::size_t k, const double* x,
                      std::size_t p, const std::size_t* cols, std::size_t ncols, double* out,
                      bool accumulate) {
    const std::size_t count = cols ? ncols : k;
    const std::size_t m8 = m - m % 8;
    const std::size_t m2 = m - m % 2;

    // Row blocks outermost so the strip of A they touch stays cached across columns of X.
    for (std::size_t i = 0; i < m8; i += 8) {
        for (std::size_t j = 0; j < p; ++j) {
            double* y = out + 2 * m * j;
            const double* xc = x + 2 * k * j;
            __m256d re[4];
            __m256d im[4];
            for (int r = 0; r < 4; ++r) {
                re[r] = accumulate ? _mm256_loadu_pd(y + 2 * i + 4 * r) : _mm256_setzero_pd();
                im[r] = _mm256_setzero_pd();
            }
            for (std::size_t q = 0; q < count; ++q) {
                const std::size_t c = cols ? cols[q] : q;
                const double xr = xc[2 * c];
                const double xi = xc[2 * c + 1];
                if (xr == 0.0 && xi == 0.0) continue;
                const __m256d vr = _mm256_set1_pd(xr);
                const __m256d vi = _mm256_set1_pd(xi);
                const double* col = a + 2 * (m * c + i);
                for (int r = 0; r < 4; ++r) {
                    const __m256d av = _mm256_loadu_pd(col + 4 * r);
                    re[r] = _mm256_fmadd_pd(av, vr, re[r]);
                    im[r] = _mm256_fmadd_pd(swap_re_im(av), vi, im[r]);
                }
            }
            for (int r = 0; r < 4; ++r) {
                _mm256_storeu_pd(y + 2 * i + 4 * r, _mm256_addsub_pd(re[r], im[r]));
            }
        }
    }

    for (std::size_t j = 0; j < p; ++j) {
        double* y = out + 2 * m * j;
        const double* xc = x + 2 * k * j;
        for (std::size_t i = m8; i < m2; i += 2) {
            __m256d re = accumulate ? _mm256_loadu_pd(y + 2 * i) : _mm256_setzero_pd();
            __m256d im = _mm256_setzero_pd();
            for (std::size_t q = 0; q < count; ++q) {
                const std::size_t c = cols ? cols[q] : q;
                const double xr = xc[2 * c];
                const double xi = xc[2 * c + 1];
                if (xr == 0.0 && xi == 0.0) continue;
                const __m256d av = _mm256_loadu_pd(a + 2 * (m * c + i));
                re = _mm256_fmadd_pd(av, _mm256_set1_pd(xr), re);
                im = _mm256_fmadd_pd(swap_re_im(av), _mm256_set1_pd(xi), im);
            }
            _mm256_storeu_pd(y + 2 * i, _mm256_addsub_pd(re, im));
        }
        if (m2 != m) {
            const std::size_t i = m2;
            double yr = accumulate ? y[2 * i] : 0.0;
            double yi = accumulate ? y[2 * i + 1] : 0.0;
            for (std::size_t q = 0; q < count; ++q) {
                const std::size_t c = cols ? cols[q] : q;
                const double xr = xc[2 * c];
                const double xi = xc[2 * c + 1];
                if (xr == 0.0 && xi == 0.0) continue;
                const double ar = a[2 * (m * c + i)];
                const double ai = a[2 * (m * c + i) + 1];
                yr += ar * xr - ai * xi;
                yi += ar * xi + ai * xr;
            }
            y[2 * i] = yr;
            y[2 * i + 1] = yi;
        }
    }
}

CSCOMP_AVX2 void gemm_adjoint(const double* a, std::size_t m, std::size_t k, const double* x,
                              std::size_t p, double* out) {
    const std::size_t m2 = m - m % 2;
    const std::size_t p4 = p - p % 4;
    // X with re/im swapped, so the inner loop needs no shuffles.
    std::vector<double> xs(2 * m * p);
    for (std::size_t e = 0; e < m * p; ++e) {
        xs[2 * e] = x[2 * e + 1];
        xs[2 * e + 1] = x[2 * e];
    }
    const __m256d odd_sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);

    // (sum of rr lanes, lane0 - lane1 + lane2 - lane3 of ri) as one 128-bit pair.
    auto reduce = [&](__m256d rr, __m256d ri) CSCOMP_AVX2 {
        const __m256d h = _mm256_hadd_pd(rr, _mm256_xor_pd(ri, odd_sign));
        return _mm_add_pd(_mm256_castpd256_pd128(h), _mm256_extractf128_pd(h, 1));
    };
    auto tail = [&](const double* col, std::size_t j, __m128d acc) {
        if (m2 == m) return acc;
        const double ar = col[2 * m2];
        const double ai = col[2 * m2 + 1];
        const double br = x[2 * (m * j + m2)];
        const double bi = x[2 * (m * j + m2) + 1];
        return _mm_add_pd(acc, _mm_set_pd(ar * bi - ai * br, ar * br + ai * bi));
    };

    for (std::size_t c = 0; c < k; ++c) {
        const double* col = a + 2 * m * c;
        std::size_t j = 0;
        for (; j < p4; j += 4) {
            __m256d rr[4];
            __m256d ri[4];
            for (int u = 0; u < 4; ++u) {
                rr[u] = _mm256_setzero_pd();
                ri[u] = _mm256_setzero_pd();
            }
            for (std::size_t i = 0; i < m2; i += 2) {
                const __m256d av = _mm256_loadu_pd(col + 2 * i);
                for (int u = 0; u < 4; ++u) {
                    const std::size_t off = 2 * (m * (j + u) + i);
                    rr[u] = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + off), rr[u]);
                    ri[u] = _mm256_fmadd_pd(av, _mm256_loadu_pd(xs.data() + off), ri[u]);
                }
            }
            for (int u = 0; u < 4; ++u) {
                _mm_storeu_pd(out + 2 * (c + k * (j + u)), tail(col, j + u, reduce(rr[u], ri[u])));
            }
        }
        for (; j < p; ++j) {
            __m256d rr = _mm256_setzero_pd();
            __m256d ri = _mm256_setzero_pd();
            for (std::size_t i = 0; i < m2; i += 2) {
                const __m256d av = _mm256_loadu_pd(col + 2 * i);
                const std::size_t off = 2 * (m * j + i);
                rr = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + off), rr);
                ri = _mm256_fmadd_pd(av, _mm256_loadu_pd(xs.data() + off), ri);
            }
            _mm_storeu_pd(out + 2 * (c + k * j), tail(col, j, reduce(rr, ri)));
        }
    }
}

CSCOMP_AVX2 void row_abs2(const double* x, std::size_t n, std::size_t p, double* out) {
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double* col = x + 2 * n * j;
        for (std::size_t i = 0; i < n4; i += 4) {
            const __m256d v0 = _mm256_loadu_pd(col + 2 * i);
            const __m256d v1 = _mm256_loadu_pd(col + 2 * i + 4);
            // hadd gives [|x0|^2, |x2|^2, |x1|^2, |x3|^2]
            const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
            const __m256d ordered = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
            _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), ordered));
        }
        for (std::size_t i = n4; i < n; ++i) {
            out[i] += col[2 * i] * col[2 * i] + col[2 * i + 1] * col[2 * i + 1];
        }
    }
}

CSCOMP_AVX2 void scale_rows(double* x, std::size_t n, std::size_t p, const double* factors) {
    const std::size_t n2 = n - n % 2;
    for (std::size_t j = 0; j < p; ++j) {
        double* col = x + 2 * n * j;
        for (std::size_t i = 0; i < n2; i += 2) {
            const __m256d f = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(factors + i)),
                                                    _MM_SHUFFLE(1, 1, 0, 0));
            _mm256_storeu_pd(col + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(col + 2 * i), f));
        }
        if (n2 != n) {
            col[2 * n2] *= factors[n2];
            col[2 * n2 + 1] *= factors[n2];
        }
    }
}

}  // namespace cscomp::kernels::avx2

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

#include <doctest.h>

#include <random>
#include <vector>

#include "cscomp/kernels.hpp"
#include "cscomp/linalg.hpp"
#include "oracles.hpp"

using namespace cscomp;

namespace {

const double* raw(const CMatrix& m) { return reinterpret_cast<const double*>(m.data()); }
double* raw(CMatrix& m) { return reinterpret_cast<double*>(m.data()); }

double rel_diff(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

struct Shape {
    Index m, k, p;
};

const std::vector<Shape> kShapes{{1, 1, 1}, {2, 3, 1}, {7, 5, 3}, {8, 9, 4}, {13, 17, 5},
                                 {52, 257, 16}, {33, 40, 7}, {52, 1025, 3}, {9, 2, 6}};

}  // namespace

TEST_CASE("scalar table is always available") {
    CHECK(kernels::scalar_table().level == kernels::SimdLevel::Scalar);
    CHECK(kernels::active().name.size() > 0);
}

TEST_CASE("avx2 gemm matches the scalar reference") {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (!v) return;
    const auto& s = kernels::scalar_table();
    std::uint64_t seed = 1;
    for (const Shape& sh : kShapes) {
        CAPTURE(sh.m);
        CAPTURE(sh.k);
        CAPTURE(sh.p);
        const CMatrix a = oracle::gaussian_matrix(seed++, sh.m, sh.k, 1.0);
        CMatrix x = oracle::gaussian_matrix(seed++, sh.k, sh.p, 1.0);
        for (Index i = 0; i < sh.k; i += 3) x(i, 0) = 0.0;  // exercise zero skipping
        for (bool accumulate : {false, true}) {
            CMatrix ref = oracle::gaussian_matrix(seed, sh.m, sh.p, 1.0);
            CMatrix out = ref;
            s.gemm(raw(a), sh.m, sh.k, raw(x), sh.p, nullptr, 0, raw(ref), accumulate);
            v->gemm(raw(a), sh.m, sh.k, raw(x), sh.p, nullptr, 0, raw(out), accumulate);
            CHECK(rel_diff(out, ref) < 1e-13);
            const CMatrix expect = accumulate ? CMatrix(oracle::gaussian_matrix(seed, sh.m, sh.p, 1.0) + a * x) : CMatrix(a * x);
            CHECK(rel_diff(ref, expect) < 1e-12);
        }
        std::vector<std::size_t> cols;
        for (Index c = 0; c < sh.k; c += 2) cols.push_back(static_cast<std::size_t>(c));
        CMatrix r1(sh.m, sh.p), r2(sh.m, sh.p);
        s.gemm(raw(a), sh.m, sh.k, raw(x), sh.p, cols.data(), cols.size(), raw(r1), false);
        v->gemm(raw(a), sh.m, sh.k, raw(x), sh.p, cols.data(), cols.size(), raw(r2), false);
        CHECK(rel_diff(r2, r1) < 1e-13);
    }
}

TEST_CASE("avx2 gemm_adjoint matches the scalar reference") {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (!v) return;
    const auto& s = kernels::scalar_table();
    std::uint64_t seed = 100;
    for (const Shape& sh : kShapes) {
        const CMatrix a = oracle::gaussian_matrix(seed++, sh.m, sh.k, 1.0);
        const CMatrix x = oracle::gaussian_matrix(seed++, sh.m, sh.p, 1.0);
        CMatrix r1(sh.k, sh.p), r2(sh.k, sh.p);
        s.gemm_adjoint(raw(a), sh.m, sh.k, raw(x), sh.p, raw(r1));
        v->gemm_adjoint(raw(a), sh.m, sh.k, raw(x), sh.p, raw(r2));
        CHECK(rel_diff(r2, r1) < 1e-13);
        CHECK(rel_diff(r1, a.adjoint() * x) < 1e-12);
    }
}

TEST_CASE("avx2 row_abs2 and scale_rows match the scalar reference") {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (!v) return;
    const auto& s = kernels::scalar_table();
    for (Index n : {1, 3, 4, 5, 8, 257, 1025}) {
        for (Index p : {1, 2, 16}) {
            const CMatrix x = oracle::gaussian_matrix(static_cast<std::uint64_t>(n * 31 + p), n, p, 1.0);
            RVector o1(n), o2(n);
            s.row_abs2(raw(x), n, p, o1.data());
            v->row_abs2(raw(x), n, p, o2.data());
            CHECK((o1 - o2).norm() <= 1e-13 * o1.norm());
            CHECK((o1 - x.rowwise().squaredNorm()).norm() <= 1e-13 * o1.norm());

            const RVector factors = o1.array().sqrt();
            CMatrix y1 = x, y2 = x;
            s.scale_rows(raw(y1), n, p, factors.data());
            v->scale_rows(raw(y2), n, p, factors.data());
            CHECK(y1 == y2);
            CHECK(rel_diff(y1, factors.asDiagonal() * x) < 1e-15);
        }
    }
}

TEST_CASE("linalg wrappers agree with dense products") {
    const CMatrix a = oracle::gaussian_matrix(1, 11, 23, 1.0);
    const CMatrix x = oracle::gaussian_matrix(2, 23, 4, 1.0);
    const CMatrix r = oracle::gaussian_matrix(3, 11, 4, 1.0);
    CHECK(rel_diff(multiply(a, x), a * x) < 1e-13);
    CHECK(rel_diff(adjoint_multiply(a, r), a.adjoint() * r) < 1e-13);

    const RowSupport rows{1, 4, 22};
    CMatrix xs = CMatrix::Zero(23, 4);
    for (Index i : rows) xs.row(i) = x.row(i);
    CHECK(rel_diff(multiply_rows(a, x, rows), a * xs) < 1e-13);

    CMatrix acc = oracle::gaussian_matrix(4, 23, 11, 1.0);
    const CMatrix expect = acc + x * r.adjoint();
    accumulate_outer(acc, x, r);
    CHECK(rel_diff(acc, expect) < 1e-13);

    CHECK(real_inner(x, x) == doctest::Approx(x.squaredNorm()).epsilon(1e-14));
}

TEST_CASE("row helpers") {
    CMatrix x = CMatrix::Zero(5, 2);
    x(1, 0) = 3.0;
    x(3, 1) = cplx(0, 4);
    x(4, 0) = 3.0;
    CHECK(row_support(x) == RowSupport{1, 3, 4});
    CHECK(row_count(x) == 3);
    const RVector n = row_norms_squared(x);
    CHECK(n(3) == 16.0);
    // ties go to the lower index; result ascending
    CHECK(top_indices(n, 2) == RowSupport{1, 3});
    CHECK(top_indices(n, 1) == RowSupport{3});
}

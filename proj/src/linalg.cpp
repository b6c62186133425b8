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

#include "cscomp/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "cscomp/error.hpp"
#include "cscomp/kernels.hpp"

namespace cscomp {

namespace {

const double* raw(const CMatrix& m) { return reinterpret_cast<const double*>(m.data()); }
double* raw(CMatrix& m) { return reinterpret_cast<double*>(m.data()); }

std::size_t sz(Index i) { return static_cast<std::size_t>(i); }

}  // namespace

CMatrix multiply(const CMatrix& a, const CMatrix& x) {
    if (a.cols() != x.rows()) throw ParameterError("multiply: inner dimensions differ");
    CMatrix out(a.rows(), x.cols());
    if (out.size() == 0) return out;
    kernels::active().gemm(raw(a), sz(a.rows()), sz(a.cols()), raw(x), sz(x.cols()), nullptr, 0,
                           raw(out), false);
    return out;
}

CMatrix multiply_rows(const CMatrix& a, const CMatrix& x, const RowSupport& rows) {
    if (a.cols() != x.rows()) throw ParameterError("multiply_rows: inner dimensions differ");
    CMatrix out = CMatrix::Zero(a.rows(), x.cols());
    if (out.size() == 0 || rows.empty()) return out;
    std::vector<std::size_t> cols(rows.begin(), rows.end());
    kernels::active().gemm(raw(a), sz(a.rows()), sz(a.cols()), raw(x), sz(x.cols()), cols.data(),
                           cols.size(), raw(out), false);
    return out;
}

CMatrix adjoint_multiply(const CMatrix& a, const CMatrix& x) {
    if (a.rows() != x.rows()) throw ParameterError("adjoint_multiply: row counts differ");
    CMatrix out(a.cols(), x.cols());
    if (out.size() == 0) return out;
    if (a.rows() == 0) {
        out.setZero();
        return out;
    }
    kernels::active().gemm_adjoint(raw(a), sz(a.rows()), sz(a.cols()), raw(x), sz(x.cols()),
                                   raw(out));
    return out;
}

void accumulate_outer(CMatrix& out, const CMatrix& u, const CMatrix& v) {
    if (out.rows() != u.rows() || out.cols() != v.rows() || u.cols() != v.cols()) {
        throw ParameterError("accumulate_outer: shape mismatch");
    }
    if (out.size() == 0 || u.cols() == 0) return;
    const CMatrix vh = v.adjoint();
    kernels::active().gemm(raw(u), sz(u.rows()), sz(u.cols()), raw(vh), sz(vh.cols()), nullptr, 0,
                           raw(out), true);
}

void scale_rows(CMatrix& x, const RVector& factors) {
    if (factors.size() != x.rows()) throw ParameterError("scale_rows: factor count mismatch");
    if (x.size() == 0) return;
    kernels::active().scale_rows(raw(x), sz(x.rows()), sz(x.cols()), factors.data());
}

double real_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ParameterError("real_inner: shape mismatch");
    }
    const double* pa = raw(a);
    const double* pb = raw(b);
    double s = 0.0;
    for (Index i = 0; i < 2 * a.size(); ++i) s += pa[i] * pb[i];
    return s;
}

RVector row_norms_squared(const CMatrix& x) {
    RVector out(x.rows());
    if (x.rows() == 0) return out;
    if (x.cols() == 0) {
        out.setZero();
        return out;
    }
    kernels::active().row_abs2(raw(x), sz(x.rows()), sz(x.cols()), out.data());
    return out;
}

RowSupport row_support(const CMatrix& x) {
    const RVector norms = row_norms_squared(x);
    RowSupport support;
    for (Index i = 0; i < norms.size(); ++i) {
        if (norms(i) > 0.0) support.push_back(i);
    }
    return support;
}

Index row_count(const CMatrix& x) {
    const RVector norms = row_norms_squared(x);
    return static_cast<Index>((norms.array() > 0.0).count());
}

RowSupport top_indices(const RVector& values, Index count) {
    count = std::clamp<Index>(count, 0, values.size());
    RowSupport order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::partial_sort(order.begin(), order.begin() + count, order.end(), [&](Index a, Index b) {
        if (values(a) != values(b)) return values(a) > values(b);
        return a < b;
    });
    order.resize(static_cast<std::size_t>(count));
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace cscomp

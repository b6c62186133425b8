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

#include "cscomp/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace cscomp::kernels {

namespace {

const KernelTable kScalar{SimdLevel::Scalar, "scalar", &scalar::gemm, &scalar::gemm_adjoint,
                          &scalar::row_abs2, &scalar::scale_rows};

#if defined(CSCOMP_HAVE_AVX2_KERNELS)
const KernelTable kAvx2{SimdLevel::Avx2, "avx2", &avx2::gemm, &avx2::gemm_adjoint,
                        &avx2::row_abs2, &avx2::scale_rows};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() {
    if (const char* env = std::getenv("CSCOMP_SIMD"); env && std::string_view(env) == "scalar") {
        return kScalar;
    }
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(CSCOMP_HAVE_AVX2_KERNELS)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace cscomp::kernels

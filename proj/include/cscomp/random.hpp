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

#include <cstdint>
#include <initializer_list>
#include <random>

#include "cscomp/types.hpp"

namespace cscomp {

using Rng = std::mt19937_64;

/// Deterministically mixes a base seed with a path of indices (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

/// Circular complex Gaussian: real and imaginary parts i.i.d. N(0, variance / 2).
cplx complex_gaussian(Rng& rng, double variance = 1.0);

/// Matrix of i.i.d. circular complex Gaussian entries.
CMatrix complex_gaussian_matrix(Rng& rng, Index rows, Index cols, double variance = 1.0);

}  // namespace cscomp

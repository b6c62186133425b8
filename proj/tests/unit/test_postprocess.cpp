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

#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/model.hpp"
#include "cscomp/postprocess.hpp"
#include "cscomp/random.hpp"
#include "oracles.hpp"

using namespace cscomp;

TEST_CASE("pruning keeps at most s rows and never loses to truncation") {
    for (int k = 0; k < 50; ++k) {
        const CMatrix f = oracle::gaussian_matrix(100 + k, 20, 40, 0.05);
        const CMatrix xh = oracle::gaussian_matrix(200 + k, 40, 3, 1.0);
        const CMatrix y = oracle::gaussian_matrix(300 + k, 20, 3, 1.0);
        const Index s = 1 + k % 10;
        const SolverResult r = prune_and_refit(xh, f, y, s);
        CHECK(row_count(r.estimate) <= s);
        CHECK(static_cast<Index>(r.support.size()) == s);
        CHECK(r.algorithm == "prune_and_refit");
        CHECK(r.final_residual <= (y - f * truncate_rows(xh, s)).norm() * (1.0 + 1e-12));
        CHECK(r.final_residual == doctest::Approx((y - f * r.estimate).norm()).epsilon(1e-12));
    }
}

TEST_CASE("top rows use the hard-threshold tie rule") {
    CMatrix xh = CMatrix::Zero(5, 1);
    xh << 1.0, 2.0, 2.0, 0.5, 2.0;
    CHECK(row_support(truncate_rows(xh, 2)) == RowSupport{1, 2});
    CHECK(truncate_rows(xh, 2) == hard_threshold_rows(xh, 2));
}

TEST_CASE("zero input gives an empty support") {
    const CMatrix f = oracle::gaussian_matrix(1, 8, 12, 0.1);
    const CMatrix y = oracle::gaussian_matrix(2, 8, 2, 1.0);
    const SolverResult r = prune_and_refit(CMatrix::Zero(12, 2), f, y, 3);
    CHECK(r.support.empty());
    CHECK(r.estimate.norm() == 0.0);
    CHECK(r.final_residual == doctest::Approx(y.norm()));

    // rows that are zero are never selected
    CMatrix one = CMatrix::Zero(12, 2);
    one(4, 1) = 1.0;
    CHECK(prune_and_refit(one, f, y, 3).support == RowSupport{4});
}

TEST_CASE("idempotent on OMP output") {
    const CMatrix f = build_sensing_matrix(1).entries;
    for (std::uint64_t k = 0; k < 10; ++k) {
        const TrainingSample s = draw_training_sample(f, 10, 16, 20.0, derive_seed(8, {k}));
        const SolverResult g = omp_mmv(f, s.y, 10);
        const SolverResult r = prune_and_refit(g.estimate, f, s.y, 10);
        CHECK(r.support == g.support);
        CHECK((r.estimate - g.estimate).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, g.estimate.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("refit of a correct FISTA support is exact on noiseless data") {
    const CMatrix f = oracle::gaussian_matrix(7, 40, 80, 1.0 / 40);
    RowSupport truth;
    const CMatrix y = f * oracle::sparse_rows(8, 80, 4, 4, &truth);
    FistaConfig cfg;
    cfg.max_iters = 2000;
    cfg.inner_iters = 100;
    // small leakage on every row stands in for an unconverged iterate
    const CMatrix dense = fista(f, y, cfg).estimate + 1e-3 * oracle::gaussian_matrix(9, 80, 4, 1.0);
    REQUIRE(row_count(dense) == 80);
    const SolverResult r = prune_and_refit(dense, f, y, 4);
    REQUIRE(r.support == truth);
    CHECK(r.final_residual <= 1e-8);
}

TEST_CASE("validation") {
    const CMatrix f = oracle::gaussian_matrix(1, 8, 12, 0.1);
    CHECK_THROWS_AS(prune_and_refit(CMatrix::Zero(12, 1), f, CMatrix::Zero(8, 1), 0), ParameterError);
    CHECK_THROWS_AS(prune_and_refit(CMatrix::Zero(12, 1), f, CMatrix::Zero(8, 1), 9), ParameterError);
}

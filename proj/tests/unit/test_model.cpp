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

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cscomp/cmpx.hpp"
#include "cscomp/error.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/model.hpp"
#include "cscomp/parallel.hpp"
#include "cscomp/random.hpp"
#include "oracles.hpp"

using namespace cscomp;

TEST_CASE("sensing matrix shapes and entries") {
    const SensingMatrix f1 = build_sensing_matrix(1);
    CHECK(f1.rows() == 52);
    CHECK(f1.cols() == 257);
    CHECK(f1.subcarriers.front() == -312);
    CHECK(f1.subcarriers.back() == 300);
    for (Index m = 0; m < f1.rows(); ++m) CHECK(f1.entries(m, 0) == cplx(1.0 / 32.0, 0.0));

    const SensingMatrix f4 = build_sensing_matrix(4);
    CHECK(f4.rows() == 52);
    CHECK(f4.cols() == 1025);
    CHECK((f4.entries.cwiseAbs().array() - 1.0 / 32.0).abs().maxCoeff() <= 1e-15);

    // direct evaluation of one entry
    const double phase = -2.0 * M_PI * (-312.0 + 12.0 * 7) * 301.0 / 4096.0;
    CHECK(std::abs(f4.entries(7, 301) - std::polar(1.0 / 32.0, phase)) < 1e-13);
}

TEST_CASE("adjacent-column coherence grows with oversampling") {
    double prev = 0.0;
    for (int os : {1, 2, 4}) {
        const CMatrix f = build_sensing_matrix(os).entries;
        const double c = std::abs(f.col(10).dot(f.col(11))) / f.col(10).squaredNorm();
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("sensing matrix parameter validation") {
    CHECK_THROWS_AS(build_sensing_matrix(0), ParameterError);
    CHECK_THROWS_AS(build_sensing_matrix(1, 1024, 256, {}), ParameterError);
    CHECK_THROWS_AS(build_sensing_matrix(1, 1024, 256, {512}), ParameterError);
    CHECK_NOTHROW(build_sensing_matrix(1, 1024, 256, {-512, 511}));
}

TEST_CASE("sparse samples") {
    const CMatrix a = generate_sparse_sample(257, 16, 10, 42);
    CHECK(a == generate_sparse_sample(257, 16, 10, 42));
    CHECK(row_count(a) == 10);
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) CHECK((a(i, j) != 0.0) == (a.row(i).squaredNorm() > 0.0));
    }
    CHECK(row_count(generate_sparse_sample(20, 3, 20, 1)) == 20);
    CHECK_THROWS_AS(generate_sparse_sample(20, 3, 0, 1), ParameterError);
    CHECK_THROWS_AS(generate_sparse_sample(20, 3, 21, 1), ParameterError);
}

TEST_CASE("sparse sample statistics over 1000 draws") {
    double sum = 0.0;
    double count = 0.0;
    long rows = 0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const CMatrix x = generate_sparse_sample(257, 16, 10, derive_seed(3, {k}));
        rows += row_count(x);
        for (Index i : row_support(x)) {
            sum += x.row(i).squaredNorm();
            count += 16;
        }
    }
    CHECK(rows == 10 * 1000);
    CHECK(sum / count == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("measurement synthesis") {
    const SensingMatrix f = build_sensing_matrix(1);
    CHECK(synthesize_measurements(f.entries, CMatrix::Zero(257, 4), std::nullopt, 1).norm() == 0.0);
    const CMatrix x = generate_sparse_sample(257, 4, 5, 9);
    CHECK((synthesize_measurements(f.entries, x, std::nullopt, 2) - f.entries * x).norm() <= 1e-14 * x.norm());
    CHECK(synthesize_measurements(f.entries, x, 10.0, 2) == synthesize_measurements(f.entries, x, 10.0, 2));
    CHECK_THROWS_AS(synthesize_measurements(f.entries, CMatrix::Zero(10, 4), std::nullopt, 1), ParameterError);

    double ratio = 0.0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        const CMatrix xs = generate_sparse_sample(257, 16, 10, derive_seed(5, {k}));
        const CMatrix clean = f.entries * xs;
        const CMatrix y = synthesize_measurements(f.entries, xs, 20.0, derive_seed(6, {k}));
        ratio += clean.squaredNorm() / (y - clean).squaredNorm();
    }
    CHECK(ratio / 500.0 == doctest::Approx(100.0).epsilon(0.10));
}

TEST_CASE("off-grid channels") {
    const SensingMatrix f = build_sensing_matrix(1);
    const OffGridSample one = generate_offgrid_channel(4, 1, f, std::nullopt, 3);
    Eigen::JacobiSVD<CMatrix> svd(one.y);
    CHECK(svd.singularValues()(1) <= 1e-12 * svd.singularValues()(0));

    const OffGridSample a = generate_offgrid_channel(16, 10, f, 20.0, 8);
    const OffGridSample b = generate_offgrid_channel(16, 10, f, 20.0, 8);
    CHECK(a.y == b.y);
    CHECK(a.channel.delays == b.channel.delays);
    REQUIRE(a.channel.delays.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(a.channel.delays[k] > 0.0);
        CHECK(a.channel.delays[k] < 1.0);
        if (k) CHECK(a.channel.delays[k] > a.channel.delays[k - 1]);
    }
    CHECK(a.channel.gains.rows() == 10);
    CHECK(a.channel.gains.cols() == 16);

    // continuous response formula
    const CMatrix clean = offgrid_response(a.channel, f);
    cplx expect = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
        expect += a.channel.gains(static_cast<Index>(k), 2) / 32.0 *
                  std::exp(cplx(0.0, -2.0 * M_PI * f.subcarriers[5] * a.channel.delays[k] * 256.0 / 1024.0));
    }
    CHECK(std::abs(clean(5, 2) - expect) < 1e-12);
    CHECK((a.y - clean).norm() > 0.0);
}

TEST_CASE("normalization") {
    const CMatrix y = oracle::gaussian_matrix(1, 52, 16, 3.0);
    CHECK(std::abs(normalize_measurements(y).norm() - 1.0) <= 1e-14);
    const CMatrix unit = y / y.norm();
    CHECK((normalize_measurements(unit) - unit).norm() <= 1e-15);
    const CMatrix two = 2.0 * CMatrix::Identity(4, 3);
    CHECK(std::abs(normalize_measurements(two)(0, 0) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK_THROWS_AS(normalize_measurements(CMatrix::Zero(3, 3)), DegenerateInputError);
}

TEST_CASE("CMPX layout and round trip") {
    CMatrix m(2, 3);
    m << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(-1, -0.0), cplx(1e300, -1e-300), cplx(0.1, 0.2);
    std::stringstream ss;
    write_cmpx(ss, m);
    const std::string bytes = ss.str();
    REQUIRE(bytes.size() == 16 + 16 * 6);
    CHECK(bytes.substr(0, 4) == "CMPX");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[8] == 2);
    CHECK(bytes[12] == 3);
    double first_im = 0.0;
    std::memcpy(&first_im, bytes.data() + 24, 8);
    CHECK(first_im == 2.0);
    double second_re = 0.0;  // column-major: (1, 0) comes second
    std::memcpy(&second_re, bytes.data() + 32, 8);
    CHECK(second_re == -1.0);

    const CMatrix back = read_cmpx(ss);
    CHECK(back == m);
    CHECK(std::signbit(back(1, 0).imag()));

    std::stringstream bad(bytes.substr(0, 40));
    CHECK_THROWS_AS(read_cmpx(bad), FormatError);
    std::string wrong = bytes;
    wrong[0] = 'X';
    std::stringstream bad_magic(wrong);
    CHECK_THROWS_AS(read_cmpx(bad_magic), FormatError);
    wrong = bytes;
    wrong[4] = 2;
    std::stringstream bad_version(wrong);
    CHECK_THROWS_AS(read_cmpx(bad_version), FormatError);

    const auto path = std::filesystem::temp_directory_path() / "cscomp_test_matrix.cmpx";
    save_cmpx(path, build_sensing_matrix(1).entries);
    CHECK(load_cmpx(path) == build_sensing_matrix(1).entries);
    std::filesystem::remove(path);
    CHECK_THROWS(load_cmpx(path));
}

TEST_CASE("seed derivation and parallel_for") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {}) != derive_seed(2, {}));

    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw SolverError("boom", 7); }), SolverError);
    CHECK(worker_count() >= 1);
}

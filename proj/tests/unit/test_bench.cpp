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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cscomp/bench.hpp"
#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/model.hpp"

using namespace cscomp;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.algorithms = {"omp"};
    cfg.os_values = {1};
    cfg.s_values = {10};
    cfg.num_samples = 3;
    cfg.record_wall_time = false;
    return cfg;
}

std::string csv_of(const BenchmarkReport& r) {
    std::ostringstream out;
    write_metrics_csv(out, r.rows);
    return out.str();
}

}  // namespace

TEST_CASE("counting contract") {
    const BenchmarkReport r = run_benchmark(small_config());
    CHECK(r.rows.size() == 3);
    CHECK(r.summaries.size() == 1);
    CHECK(r.summaries[0].count == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r.rows[i].sample_index == i);
        CHECK(r.rows[i].residual >= 0.0);
        CHECK_FALSE(r.rows[i].gamma.has_value());
    }
}

TEST_CASE("CSV header and determinism") {
    const std::string a = csv_of(run_benchmark(small_config()));
    CHECK(a.substr(0, a.find('\n')) == "algorithm,os,s,gamma,sample_index,residual,nmse_vs_truth,iterations,wall_time_ms");
    CHECK(a == csv_of(run_benchmark(small_config())));
    ExperimentConfig other = small_config();
    other.seed = 1;
    CHECK(a != csv_of(run_benchmark(other)));
}

TEST_CASE("rows are ordered and paired across algorithms") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms = {"omp", "amp_mmv", "niht"};
    cfg.os_values = {1, 2};
    cfg.s_values = {5, 10};
    cfg.num_samples = 2;
    const BenchmarkReport r = run_benchmark(cfg);
    REQUIRE(r.rows.size() == 3 * 2 * 2 * 2);
    CHECK(r.rows[0].algorithm == "omp");
    CHECK(r.rows[0].os == 1);
    CHECK(r.rows[0].s == 5);
    CHECK(r.rows[2].s == 10);
    CHECK(r.rows[4].os == 2);
    CHECK(r.rows[8].algorithm == "amp_mmv");
    // the same measurements feed every cell
    const TestSample t0 = make_test_sample(cfg, 0);
    const TestSample t1 = make_test_sample(cfg, 0);
    CHECK(t0.y == t1.y);
    CHECK(std::abs(t0.y.norm() - 1.0) < 1e-14);
    for (const auto& s : r.summaries) {
        double total = 0.0;
        for (const auto& row : r.rows) {
            if (row.algorithm == s.algorithm && row.os == s.os && row.s == s.s) total += row.residual;
        }
        CHECK(std::abs(s.mean_residual - total / 2.0) <= 1e-12);
    }
}

TEST_CASE("postprocess flag") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms = {"fista"};
    cfg.fista.max_iters = 200;
    const BenchmarkReport with = run_benchmark(cfg);
    cfg.postprocess = false;
    const BenchmarkReport without = run_benchmark(cfg);
    CHECK(with.rows[0].residual != without.rows[0].residual);
}

TEST_CASE("lamp cells are labelled by model gamma") {
    const auto dir = std::filesystem::temp_directory_path() / "cscomp_bench_test";
    std::filesystem::create_directories(dir);
    const CMatrix f = build_sensing_matrix(1).entries;
    save_model(make_lamp_model(f, 3, 0.25), dir / "g025.lmp");
    save_model(make_lamp_model(f, 3, 0.0), dir / "g0.lmp");
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << R"({"algorithms": ["lamp"], "os_values": [1], "s_values": [10], "num_samples": 2,
                   "gamma_values": [0, 0.25], "record_wall_time": false,
                   "model_paths": {"1": ["g025.lmp", "g0.lmp"]}})";
    }
    const ExperimentConfig cfg = load_experiment_config(dir / "cfg.json");
    const BenchmarkReport r = run_benchmark(cfg);
    REQUIRE(r.summaries.size() == 2);
    CHECK(*r.summaries[0].gamma == 0.0);
    CHECK(*r.summaries[1].gamma == 0.25);
    CHECK(csv_of(r).find("lamp,1,10,0.25,1,") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("configuration errors surface before computation") {
    ExperimentConfig cfg = small_config();
    cfg.algorithms = {"lamp"};
    CHECK_THROWS_AS(run_benchmark(cfg), ConfigError);
    cfg.model_paths[1] = {"/nonexistent/model.lmp"};
    CHECK_THROWS_AS(run_benchmark(cfg), ConfigError);
    cfg = small_config();
    cfg.algorithms = {"sgd"};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.s_values = {0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"os_values": "four"})"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("config parsing") {
    const ExperimentConfig cfg = parse_experiment_config(
        R"({"algorithms": ["omp", "fista"], "os_values": [1, 4], "s_values": [4, 8], "num_samples": 7,
            "p": 8, "snr_db": null, "seed": 3, "postprocess": false,
            "fista": {"max_iters": 300, "lambda_decay": 0.5}, "niht": {"c": 0.2}})");
    CHECK(cfg.algorithms.size() == 2);
    CHECK(cfg.os_values == std::vector<int>{1, 4});
    CHECK(cfg.num_samples == 7);
    CHECK(cfg.p == 8);
    CHECK_FALSE(cfg.snr_db.has_value());
    CHECK(cfg.seed == 3);
    CHECK_FALSE(cfg.postprocess);
    CHECK(cfg.fista.max_iters == 300);
    CHECK(cfg.fista.lambda_decay == 0.5);
    CHECK(cfg.niht.c == 0.2);
    CHECK(parse_experiment_config("{}").num_samples == 500);
}

TEST_CASE("quantiles") {
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({5.0}, 0.75) == 5.0);
    CHECK_THROWS(quantile({}, 0.5));
}

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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscomp/solvers.hpp"

namespace cscomp {

/// Sweep over (algorithm, os, s, gamma) on one shared off-grid test set.
struct ExperimentConfig {
    std::vector<std::string> algorithms{"omp", "niht", "fista"};  // omp niht fista amp_mmv lamp
    std::vector<int> os_values{1, 2, 4};
    std::vector<Index> s_values{10};
    std::vector<double> gamma_values{0.0, 0.25, 0.5, 0.75};
    std::size_t num_samples = 500;
    Index p = 16;
    Index num_paths = 10;  // off-grid taps per test channel
    std::optional<double> snr_db = 20.0;
    std::uint64_t seed = 0;
    /// os -> LMP1 files; each file's stored gamma labels its rows.
    std::map<int, std::vector<std::filesystem::path>> model_paths;
    bool postprocess = true;
    bool record_wall_time = true;  // false writes 0 so the CSV is byte-reproducible
    double amp_alpha = 1.0;
    int amp_iters = 20;
    NihtOptions niht;
    FistaConfig fista;

    void validate() const;
};

/// Parses the JSON form; relative model paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct MetricRow {
    std::string algorithm;
    int os = 1;
    Index s = 0;
    std::optional<double> gamma;
    std::size_t sample_index = 0;
    double residual = 0.0;       // ||Y - F X_hat|| after optional postprocessing
    double nmse_vs_truth = 0.0;  // ||Y_clean - F X_hat||^2 / ||Y_clean||^2
    std::size_t iterations = 0;
    double wall_time_ms = 0.0;
};

struct CellSummary {
    std::string algorithm;
    int os = 1;
    Index s = 0;
    std::optional<double> gamma;
    std::size_t count = 0;
    double mean_residual = 0.0;
    double median_residual = 0.0;
    double q1_residual = 0.0;
    double q3_residual = 0.0;
    double mean_nmse = 0.0;
};

struct BenchmarkReport {
    std::vector<MetricRow> rows;
    std::vector<CellSummary> summaries;
};

BenchmarkReport run_benchmark(const ExperimentConfig& cfg);

/// Same test sample for a given (seed, index) regardless of the sweep.
struct TestSample {
    MeasurementMatrix y;      // normalized, ||y|| = 1
    MeasurementMatrix clean;  // noiseless response, same scaling
};
TestSample make_test_sample(const ExperimentConfig& cfg, std::size_t index);

inline constexpr const char* kMetricsCsvHeader =
    "algorithm,os,s,gamma,sample_index,residual,nmse_vs_truth,iterations,wall_time_ms";

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summaries);

/// Linear-interpolation quantile of unsorted values, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace cscomp

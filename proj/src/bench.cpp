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

#include "cscomp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/model.hpp"
#include "cscomp/parallel.hpp"
#include "cscomp/postprocess.hpp"
#include "cscomp/random.hpp"

namespace cscomp {

namespace {

const std::set<std::string> kAlgorithms{"omp", "niht", "fista", "amp_mmv", "lamp"};

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (algorithms.empty()) throw ConfigError("no algorithms selected");
    for (const auto& a : algorithms) {
        if (!kAlgorithms.count(a)) throw ConfigError("unknown algorithm '" + a + "'");
    }
    if (os_values.empty() || s_values.empty()) throw ConfigError("os_values and s_values must be nonempty");
    for (int os : os_values) {
        if (os < 1) throw ConfigError("os values must be >= 1");
    }
    const Index m = static_cast<Index>(default_subcarriers().size());
    for (Index s : s_values) {
        if (s < 1 || s > m) throw ConfigError("s values must lie in [1, " + std::to_string(m) + "]");
    }
    if (num_samples < 1 || p < 1 || num_paths < 1) throw ConfigError("num_samples, p and num_paths must be positive");
    if (amp_iters < 1 || !(amp_alpha > 0.0)) throw ConfigError("amp settings must be positive");
    try {
        fista.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (std::find(algorithms.begin(), algorithms.end(), "lamp") != algorithms.end()) {
        for (int os : os_values) {
            auto it = model_paths.find(os);
            if (it == model_paths.end() || it->second.empty()) {
                throw ConfigError("lamp requires a model path for os=" + std::to_string(os));
            }
            for (const auto& path : it->second) {
                if (!std::filesystem::exists(path)) throw ConfigError("model file not found: " + path.string());
            }
        }
    }
}

ExperimentConfig parse_experiment_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
        read_if(j, "algorithms", cfg.algorithms);
        read_if(j, "os_values", cfg.os_values);
        read_if(j, "s_values", cfg.s_values);
        read_if(j, "gamma_values", cfg.gamma_values);
        read_if(j, "num_samples", cfg.num_samples);
        read_if(j, "p", cfg.p);
        read_if(j, "num_paths", cfg.num_paths);
        read_if(j, "seed", cfg.seed);
        read_if(j, "postprocess", cfg.postprocess);
        read_if(j, "record_wall_time", cfg.record_wall_time);
        read_if(j, "amp_alpha", cfg.amp_alpha);
        read_if(j, "amp_iters", cfg.amp_iters);
        if (j.contains("snr_db")) {
            cfg.snr_db = j.at("snr_db").is_null() ? std::nullopt : std::optional<double>(j.at("snr_db").get<double>());
        }
        if (j.contains("niht")) {
            const auto& n = j.at("niht");
            read_if(n, "c", cfg.niht.c);
            read_if(n, "max_iters", cfg.niht.max_iters);
            read_if(n, "tol", cfg.niht.tol);
        }
        if (j.contains("fista")) {
            const auto& fc = j.at("fista");
            read_if(fc, "lambda_start_factor", cfg.fista.lambda_start_factor);
            read_if(fc, "lambda_decay", cfg.fista.lambda_decay);
            read_if(fc, "lambda_min_factor", cfg.fista.lambda_min_factor);
            read_if(fc, "inner_iters", cfg.fista.inner_iters);
            read_if(fc, "max_iters", cfg.fista.max_iters);
            read_if(fc, "tol", cfg.fista.tol);
            read_if(fc, "restart_enabled", cfg.fista.restart_enabled);
        }
        if (j.contains("model_paths")) {
            for (const auto& [key, value] : j.at("model_paths").items()) {
                const int os = std::stoi(key);
                std::vector<std::string> paths;
                if (value.is_string()) {
                    paths.push_back(value.get<std::string>());
                } else {
                    paths = value.get<std::vector<std::string>>();
                }
                for (const auto& p : paths) {
                    std::filesystem::path path(p);
                    cfg.model_paths[os].push_back(path.is_relative() && !base_dir.empty() ? base_dir / path : path);
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str(), path.parent_path());
}

TestSample make_test_sample(const ExperimentConfig& cfg, std::size_t index) {
    // The off-grid response depends only on the subcarriers, not on os.
    static const SensingMatrix reference = build_sensing_matrix(1);
    OffGridSample g = generate_offgrid_channel(cfg.p, cfg.num_paths, reference, cfg.snr_db,
                                               derive_seed(cfg.seed, {0x7e57, index}));
    const double norm = g.y.norm();
    if (!(norm > 0.0)) throw DegenerateInputError("test sample has zero measurements");
    return {g.y / norm, offgrid_response(g.channel, reference) / norm};
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ParameterError("quantile of empty set");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

struct Cell {
    std::string algorithm;
    int os;
    Index s;
    const LampModel* model = nullptr;
    double lipschitz = 0.0;
};

MetricRow evaluate(const ExperimentConfig& cfg, const Cell& cell, const SensingMatrix& f, const TestSample& sample,
                   std::size_t index) {
    const auto start = std::chrono::steady_clock::now();
    SolverResult r;
    if (cell.algorithm == "omp") {
        r = omp_mmv(f.entries, sample.y, cell.s);
    } else if (cell.algorithm == "niht") {
        r = niht(f.entries, sample.y, cell.s, cfg.niht);
    } else if (cell.algorithm == "fista") {
        FistaConfig fc = cfg.fista;
        if (!fc.lipschitz) fc.lipschitz = cell.lipschitz;
        r = fista(f.entries, sample.y, fc);
    } else if (cell.algorithm == "amp_mmv") {
        r = amp_mmv(f.entries, sample.y, cfg.amp_alpha, cfg.amp_iters);
    } else {
        LampOutput out = lamp_forward(*cell.model, sample.y);
        r.algorithm = "lamp";
        r.estimate = std::move(out.estimate);
        r.iterations = cell.model->layers();
    }
    const std::size_t iterations = r.iterations;
    CsiMatrix estimate =
        cfg.postprocess ? prune_and_refit(r.estimate, f.entries, sample.y, cell.s).estimate : std::move(r.estimate);
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const CMatrix fx = multiply_rows(f.entries, estimate, row_support(estimate));
    MetricRow row;
    row.algorithm = cell.algorithm;
    row.os = cell.os;
    row.s = cell.s;
    if (cell.model) row.gamma = cell.model->gamma;
    row.sample_index = index;
    row.residual = (sample.y - fx).norm();
    row.nmse_vs_truth = (sample.clean - fx).squaredNorm() / sample.clean.squaredNorm();
    row.iterations = iterations;
    row.wall_time_ms = cfg.record_wall_time ? elapsed : 0.0;
    return row;
}

CellSummary summarize(const Cell& cell, std::span<const MetricRow> rows) {
    CellSummary s;
    s.algorithm = cell.algorithm;
    s.os = cell.os;
    s.s = cell.s;
    if (cell.model) s.gamma = cell.model->gamma;
    s.count = rows.size();
    std::vector<double> residuals;
    double nmse = 0.0;
    for (const auto& r : rows) {
        residuals.push_back(r.residual);
        nmse += r.nmse_vs_truth;
    }
    double total = 0.0;
    for (double v : residuals) total += v;
    s.mean_residual = total / static_cast<double>(rows.size());
    s.mean_nmse = nmse / static_cast<double>(rows.size());
    s.median_residual = quantile(residuals, 0.5);
    s.q1_residual = quantile(residuals, 0.25);
    s.q3_residual = quantile(residuals, 0.75);
    return s;
}

}  // namespace

BenchmarkReport run_benchmark(const ExperimentConfig& cfg) {
    cfg.validate();

    std::map<int, SensingMatrix> matrices;
    std::map<int, double> lipschitz;
    for (int os : cfg.os_values) {
        matrices.emplace(os, build_sensing_matrix(os));
        lipschitz.emplace(os, lipschitz_estimate(matrices.at(os).entries));
    }

    // Load every model up front so configuration problems surface before any solve.
    std::map<int, std::vector<LampModel>> models;
    if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), "lamp") != cfg.algorithms.end()) {
        for (int os : cfg.os_values) {
            std::vector<LampModel> loaded;
            for (const auto& path : cfg.model_paths.at(os)) {
                try {
                    loaded.push_back(load_model(path, matrices.at(os).entries));
                } catch (const std::exception& e) {
                    throw ConfigError("cannot use model " + path.string() + ": " + e.what());
                }
                const double g = loaded.back().gamma;
                if (!cfg.gamma_values.empty() &&
                    std::find(cfg.gamma_values.begin(), cfg.gamma_values.end(), g) == cfg.gamma_values.end()) {
                    throw ConfigError("model " + path.string() + " has gamma " + std::to_string(g) +
                                      " outside gamma_values");
                }
            }
            std::stable_sort(loaded.begin(), loaded.end(), [&](const LampModel& a, const LampModel& b) {
                auto rank = [&](double g) {
                    return std::find(cfg.gamma_values.begin(), cfg.gamma_values.end(), g) - cfg.gamma_values.begin();
                };
                return rank(a.gamma) < rank(b.gamma);
            });
            models.emplace(os, std::move(loaded));
        }
    }

    std::vector<TestSample> samples(cfg.num_samples);
    parallel_for(cfg.num_samples, [&](std::size_t i) { samples[i] = make_test_sample(cfg, i); });

    std::vector<Cell> cells;
    for (const auto& algorithm : cfg.algorithms) {
        for (int os : cfg.os_values) {
            for (Index s : cfg.s_values) {
                if (algorithm == "lamp") {
                    for (const auto& model : models.at(os)) cells.push_back({algorithm, os, s, &model, 0.0});
                } else {
                    cells.push_back({algorithm, os, s, nullptr, lipschitz.at(os)});
                }
            }
        }
    }

    BenchmarkReport report;
    report.rows.resize(cells.size() * cfg.num_samples);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const SensingMatrix& f = matrices.at(cells[c].os);
        parallel_for(cfg.num_samples, [&](std::size_t i) {
            report.rows[c * cfg.num_samples + i] = evaluate(cfg, cells[c], f, samples[i], i);
        });
        report.summaries.push_back(
            summarize(cells[c], std::span<const MetricRow>(report.rows).subspan(c * cfg.num_samples, cfg.num_samples)));
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_gamma(const std::optional<double>& g) { return g ? fmt(*g) : std::string(); }

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
    out << kMetricsCsvHeader << '\n';
    for (const auto& r : rows) {
        char wall[40];
        std::snprintf(wall, sizeof wall, "%.6f", r.wall_time_ms);
        out << r.algorithm << ',' << r.os << ',' << r.s << ',' << fmt_gamma(r.gamma) << ',' << r.sample_index << ','
            << fmt(r.residual) << ',' << fmt(r.nmse_vs_truth) << ',' << r.iterations << ',' << wall << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summaries) {
    out << "algorithm,os,s,gamma,count,mean_residual,median_residual,q1_residual,q3_residual,mean_nmse\n";
    for (const auto& s : summaries) {
        out << s.algorithm << ',' << s.os << ',' << s.s << ',' << fmt_gamma(s.gamma) << ',' << s.count << ','
            << fmt(s.mean_residual) << ',' << fmt(s.median_residual) << ',' << fmt(s.q1_residual) << ','
            << fmt(s.q3_residual) << ',' << fmt(s.mean_nmse) << '\n';
    }
}

}  // namespace cscomp

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

#include "cscomp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cscomp/bench.hpp"
#include "cscomp/cmpx.hpp"
#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"
#include "cscomp/linalg.hpp"
#include "cscomp/model.hpp"
#include "cscomp/postprocess.hpp"
#include "cscomp/random.hpp"
#include "cscomp/solvers.hpp"

namespace cscomp {

namespace {

struct Options {
    int os = 1;
    Index s = 10;
    Index p = 16;
    std::optional<double> snr;  // unset means noiseless (gen-test) or the training default
    std::uint64_t seed = 0;
    std::string alg = "omp";
    std::string matrix;
    std::string data;
    std::string out;
    std::string truth;
    std::string model;
    std::string config;
    std::string summary;
    std::string kind = "offgrid";
    std::size_t layers = 20;
    double gamma = 0.5;
    double lr = 1e-3;
    std::size_t pre_epochs = 2;
    std::size_t post_epochs = 5;
    std::size_t batches = 1000;
    std::size_t batch_size = 64;
    std::size_t samples = 100;
    bool no_postprocess = false;
};

// Sensing matrix from --matrix when given, else built from --os.
SensingMatrix sensing_matrix(const Options& o) {
    if (o.matrix.empty()) return build_sensing_matrix(o.os);
    SensingMatrix f;
    f.entries = load_cmpx(o.matrix);
    const Index n = f.entries.cols();
    f.os = (n - 1) % 256 == 0 && n > 1 ? static_cast<int>((n - 1) / 256) : 0;
    return f;
}

int run_gen_matrix(const Options& o, std::ostream& out) {
    const SensingMatrix f = build_sensing_matrix(o.os);
    save_cmpx(o.out, f.entries);
    out << "wrote " << f.rows() << "x" << f.cols() << " sensing matrix to " << o.out << '\n';
    return 0;
}

int run_gen_test(const Options& o, std::ostream& out) {
    CMatrix y;
    CMatrix truth;
    if (o.kind == "ongrid") {
        const SensingMatrix f = sensing_matrix(o);
        TrainingSample sample = draw_training_sample(f.entries, o.s, o.p, o.snr, o.seed);
        y = std::move(sample.y);
        truth = std::move(sample.x);
    } else if (o.kind == "offgrid") {
        ExperimentConfig cfg;
        cfg.p = o.p;
        cfg.num_paths = o.s;
        cfg.snr_db = o.snr;
        cfg.seed = o.seed;
        TestSample sample = make_test_sample(cfg, 0);
        y = std::move(sample.y);
        truth = std::move(sample.clean);
    } else {
        throw CLI::ValidationError("--kind", "must be 'ongrid' or 'offgrid'");
    }
    save_cmpx(o.out, y);
    if (!o.truth.empty()) save_cmpx(o.truth, truth);
    out << "wrote " << o.kind << " measurements " << y.rows() << "x" << y.cols() << " to " << o.out << '\n';
    return 0;
}

int run_solve(const Options& o, std::ostream& out) {
    const SensingMatrix f = sensing_matrix(o);
    const CMatrix y = load_cmpx(o.data);
    SolverResult r;
    if (o.alg == "omp") {
        r = omp_mmv(f.entries, y, o.s);
    } else if (o.alg == "niht") {
        r = niht(f.entries, y, o.s);
    } else if (o.alg == "fista") {
        r = fista(f.entries, y);
    } else if (o.alg == "amp_mmv") {
        r = amp_mmv(f.entries, y, 1.0, static_cast<int>(o.layers));
    } else if (o.alg == "lamp") {
        if (o.model.empty()) throw CLI::RequiredError("--model");
        const LampModel model = load_model(o.model, f.entries);
        r.algorithm = "lamp";
        r.estimate = lamp_forward(model, y).estimate;
        r.iterations = model.layers();
        r.final_residual = (y - multiply(f.entries, r.estimate)).norm();
    } else {
        throw CLI::ValidationError("--alg", "unknown algorithm '" + o.alg + "'");
    }
    if (!o.no_postprocess) {
        const SolverResult refit = prune_and_refit(r.estimate, f.entries, y, o.s);
        r.estimate = refit.estimate;
        r.support = refit.support;
        r.final_residual = refit.final_residual;
        r.wall_time_ms += refit.wall_time_ms;
    }
    if (!o.out.empty()) save_cmpx(o.out, r.estimate);
    out << solver_csv_header() << '\n' << solver_csv_row(r, o.s, f.os) << '\n';
    return 0;
}

TrainConfig train_config(const Options& o) {
    TrainConfig cfg;
    cfg.layers = o.layers;
    cfg.pre_epochs = o.pre_epochs;
    cfg.post_epochs = o.post_epochs;
    cfg.batches_per_epoch = o.batches;
    cfg.batch_size = o.batch_size;
    cfg.gamma = o.gamma;
    cfg.lr = o.lr;
    cfg.s = o.s;
    cfg.p = o.p;
    cfg.snr_db = o.snr ? o.snr : TrainConfig{}.snr_db;
    cfg.seed = o.seed;
    return cfg;
}

int run_train(const Options& o, std::ostream& out, std::ostream& err) {
    const SensingMatrix f = sensing_matrix(o);
    const TrainResult result = train(f.entries, train_config(o), [&](const TrainEvent& e) {
        err << "layer " << e.layer << (e.fine_tune ? " fine-tune" : " pretrain") << " epoch " << e.epoch
            << " loss " << e.mean_loss << '\n';
    });
    save_model(result.model, o.out);
    out << "wrote " << result.model.layers() << "-layer model (" << trainable_parameter_count(result.model)
        << " parameters) to " << o.out << '\n';
    return 0;
}

int run_eval(const Options& o, std::ostream& out) {
    const SensingMatrix f = sensing_matrix(o);
    const LampModel model = load_model(o.model, f.entries);
    if (!o.data.empty()) {
        const CMatrix y = load_cmpx(o.data);
        CsiMatrix x = lamp_forward(model, y).estimate;
        if (!o.no_postprocess) x = prune_and_refit(x, f.entries, y, o.s).estimate;
        out << "residual," << (y - multiply(f.entries, x)).norm() << '\n';
        return 0;
    }
    const TrainConfig defaults = train_config(o);
    double loss = 0.0;
    double residual = 0.0;
    double amp_residual = 0.0;
    for (std::size_t i = 0; i < o.samples; ++i) {
        const TrainingSample sample =
            draw_training_sample(f.entries, o.s, o.p, defaults.snr_db, derive_seed(o.seed, {0xe7a1, i}));
        const CsiMatrix x = lamp_forward(model, sample.y).estimate;
        loss += training_loss(x, sample.x, sample.y, f.entries, model.gamma);
        residual += prune_and_refit(x, f.entries, sample.y, o.s).final_residual;
        const CsiMatrix xa = amp_mmv(f.entries, sample.y, 1.0, static_cast<int>(model.layers())).estimate;
        amp_residual += prune_and_refit(xa, f.entries, sample.y, o.s).final_residual;
    }
    const double n = static_cast<double>(o.samples);
    out << "samples,mean_loss,mean_residual,amp_mmv_mean_residual\n"
        << o.samples << ',' << loss / n << ',' << residual / n << ',' << amp_residual / n << '\n';
    return 0;
}

int run_bench(const Options& o, std::ostream& out) {
    ExperimentConfig cfg = load_experiment_config(o.config);
    if (o.no_postprocess) cfg.postprocess = false;
    const BenchmarkReport report = run_benchmark(cfg);
    std::ofstream csv(o.out, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open " + o.out);
    write_metrics_csv(csv, report.rows);
    if (!o.summary.empty()) {
        std::ofstream sum(o.summary, std::ios::binary | std::ios::trunc);
        if (!sum) throw std::runtime_error("cannot open " + o.summary);
        write_summary_csv(sum, report.summaries);
    }
    write_summary_csv(out, report.summaries);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Row-sparse compressed sensing for CSI feedback compression", "cscomp"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--os", o.os, "delay-grid oversampling factor")->check(CLI::PositiveNumber);
        cmd->add_option("--matrix", o.matrix, "sensing matrix (CMPX); overrides --os")->check(CLI::ExistingFile);
        cmd->add_option("--seed", o.seed, "random seed");
    };
    auto add_data = [&](CLI::App* cmd) {
        cmd->add_option("--s", o.s, "sparsity / number of paths")->check(CLI::PositiveNumber);
        cmd->add_option("--p", o.p, "number of spatial paths (columns)")->check(CLI::PositiveNumber);
        cmd->add_option("--snr", o.snr, "SNR in dB (omit for noiseless)");
    };

    auto* gen_matrix = app.add_subcommand("gen-matrix", "write the partial oversampled DFT matrix");
    gen_matrix->add_option("--os", o.os, "delay-grid oversampling factor")->check(CLI::PositiveNumber);
    gen_matrix->add_option("--out", o.out, "output CMPX file")->required();

    auto* gen_test = app.add_subcommand("gen-test", "write a normalized measurement sample");
    add_common(gen_test);
    add_data(gen_test);
    gen_test->add_option("--kind", o.kind, "ongrid or offgrid")->check(CLI::IsMember({"ongrid", "offgrid"}));
    gen_test->add_option("--out", o.out, "measurements Y (CMPX)")->required();
    gen_test->add_option("--truth", o.truth, "ground truth: X for ongrid, noiseless Y for offgrid");

    auto* solve = app.add_subcommand("solve", "recover a row-sparse X from measurements");
    add_common(solve);
    solve->add_option("--s", o.s, "target sparsity")->check(CLI::PositiveNumber);
    solve->add_option("--alg", o.alg, "omp, niht, fista, amp_mmv or lamp")
        ->check(CLI::IsMember({"omp", "niht", "fista", "amp_mmv", "lamp"}));
    solve->add_option("--data", o.data, "measurements Y (CMPX)")->required()->check(CLI::ExistingFile);
    solve->add_option("--model", o.model, "LMP1 model for --alg lamp")->check(CLI::ExistingFile);
    solve->add_option("--layers", o.layers, "AMP iterations for amp_mmv")->check(CLI::PositiveNumber);
    solve->add_option("--out", o.out, "write the estimate (CMPX)");
    solve->add_flag("--no-postprocess", o.no_postprocess, "skip pruning and least-squares refit");

    auto* train_cmd = app.add_subcommand("train", "train an L-AMP-MMV model on synthetic data");
    add_common(train_cmd);
    add_data(train_cmd);
    train_cmd->add_option("--layers", o.layers, "number of layers T")->check(CLI::PositiveNumber);
    train_cmd->add_option("--gamma", o.gamma, "loss mix in [0, 1]")->check(CLI::Range(0.0, 1.0));
    train_cmd->add_option("--lr", o.lr, "ADAM learning rate")->check(CLI::PositiveNumber);
    train_cmd->add_option("--pre-epochs", o.pre_epochs, "epochs per new layer");
    train_cmd->add_option("--post-epochs", o.post_epochs, "fine-tuning epochs after each layer");
    train_cmd->add_option("--batches", o.batches, "batches per epoch")->check(CLI::PositiveNumber);
    train_cmd->add_option("--batch-size", o.batch_size, "samples per batch")->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", o.out, "output LMP1 file")->required();

    auto* eval = app.add_subcommand("eval", "evaluate a trained model");
    add_common(eval);
    add_data(eval);
    eval->add_option("--model", o.model, "LMP1 model")->required()->check(CLI::ExistingFile);
    eval->add_option("--data", o.data, "evaluate on this Y (CMPX) instead of synthetic samples")
        ->check(CLI::ExistingFile);
    eval->add_option("--samples", o.samples, "synthetic validation samples")->check(CLI::PositiveNumber);
    eval->add_flag("--no-postprocess", o.no_postprocess, "skip pruning and least-squares refit");

    auto* bench = app.add_subcommand("bench", "run an experiment sweep from a JSON config");
    bench->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    bench->add_option("--out", o.out, "per-sample metrics CSV")->required();
    bench->add_option("--summary", o.summary, "per-cell summary CSV");
    bench->add_flag("--no-postprocess", o.no_postprocess, "skip pruning and least-squares refit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    }

    try {
        if (*gen_matrix) return run_gen_matrix(o, out);
        if (*gen_test) return run_gen_test(o, out);
        if (*solve) return run_solve(o, out);
        if (*train_cmd) return run_train(o, out, err);
        if (*eval) return run_eval(o, out);
        if (*bench) return run_bench(o, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace cscomp

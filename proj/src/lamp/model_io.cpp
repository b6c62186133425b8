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

#include <fstream>

#include "cscomp/binio.hpp"
#include "cscomp/error.hpp"
#include "cscomp/lamp.hpp"

namespace cscomp {

void write_lamp_model(std::ostream& out, const LampModel& model) {
    out.write("LMP1", 4);
    binio::put_u32(out, static_cast<std::uint32_t>(model.layers()));
    binio::put_u32(out, static_cast<std::uint32_t>(model.b.rows()));
    binio::put_u32(out, static_cast<std::uint32_t>(model.b.cols()));
    binio::put_f64(out, model.gamma);
    for (double a : model.alpha) binio::put_f64(out, a);
    for (double b : model.beta) binio::put_f64(out, b);
    for (Index j = 0; j < model.b.cols(); ++j) {
        for (Index i = 0; i < model.b.rows(); ++i) {
            binio::put_f64(out, model.b(i, j).real());
            binio::put_f64(out, model.b(i, j).imag());
        }
    }
}

LampModel read_lamp_model(std::istream& in, const CMatrix& f) {
    char magic[4];
    binio::read_exact(in, magic, 4, "LMP1 magic");
    if (std::string(magic, 4) != "LMP1") throw FormatError("bad LMP1 magic");
    const std::uint32_t t = binio::get_u32(in, "LMP1 layer count");
    const std::uint32_t n = binio::get_u32(in, "LMP1 N");
    const std::uint32_t m = binio::get_u32(in, "LMP1 M");
    if (t == 0) throw FormatError("LMP1 model has zero layers");
    if (static_cast<Index>(n) != f.cols() || static_cast<Index>(m) != f.rows()) {
        throw FormatError("LMP1 shape " + std::to_string(n) + "x" + std::to_string(m) +
                          " does not match the sensing matrix");
    }
    LampModel model;
    model.f = f;
    model.gamma = binio::get_f64(in, "LMP1 gamma");
    model.alpha.resize(t);
    model.beta.resize(t);
    for (auto& a : model.alpha) a = binio::get_f64(in, "LMP1 alpha");
    for (auto& b : model.beta) b = binio::get_f64(in, "LMP1 beta");
    model.b.resize(n, m);
    for (Index j = 0; j < model.b.cols(); ++j) {
        for (Index i = 0; i < model.b.rows(); ++i) {
            const double re = binio::get_f64(in, "LMP1 B");
            const double im = binio::get_f64(in, "LMP1 B");
            model.b(i, j) = {re, im};
        }
    }
    return model;
}

void save_model(const LampModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_lamp_model(out, model);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

LampModel load_model(const std::filesystem::path& path, const CMatrix& f) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_lamp_model(in, f);
}

}  // namespace cscomp

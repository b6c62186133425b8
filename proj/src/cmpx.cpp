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

#include "cscomp/cmpx.hpp"

#include <fstream>
#include <limits>

#include "cscomp/binio.hpp"
#include "cscomp/error.hpp"

namespace cscomp {

void write_cmpx(std::ostream& out, const CMatrix& m) {
    constexpr auto max = std::numeric_limits<std::uint32_t>::max();
    if (m.rows() > max || m.cols() > max) throw ParameterError("matrix too large for CMPX");
    const char head[8] = {'C', 'M', 'P', 'X', 1, 0, 0, 0};
    out.write(head, 8);
    binio::put_u32(out, static_cast<std::uint32_t>(m.rows()));
    binio::put_u32(out, static_cast<std::uint32_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            binio::put_f64(out, m(i, j).real());
            binio::put_f64(out, m(i, j).imag());
        }
    }
}

CMatrix read_cmpx(std::istream& in) {
    char head[8];
    binio::read_exact(in, head, 8, "CMPX header");
    if (head[0] != 'C' || head[1] != 'M' || head[2] != 'P' || head[3] != 'X') {
        throw FormatError("bad CMPX magic");
    }
    if (head[4] != 1) throw FormatError("unsupported CMPX version " + std::to_string(int(head[4])));
    if (head[5] != 0) throw FormatError("unsupported CMPX dtype " + std::to_string(int(head[5])));
    const std::uint32_t rows = binio::get_u32(in, "CMPX row count");
    const std::uint32_t cols = binio::get_u32(in, "CMPX column count");
    CMatrix m(rows, cols);
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            const double re = binio::get_f64(in, "CMPX values");
            const double im = binio::get_f64(in, "CMPX values");
            m(i, j) = {re, im};
        }
    }
    return m;
}

void save_cmpx(const std::filesystem::path& path, const CMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_cmpx(out, m);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

CMatrix load_cmpx(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_cmpx(in);
}

}  // namespace cscomp

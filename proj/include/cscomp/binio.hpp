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

// Little-endian binary helpers shared by the CMPX and LMP1 formats.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>

#include "cscomp/error.hpp"

namespace cscomp::binio {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(b, 4);
}

inline void put_f64(std::ostream& out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(b, 8);
}

inline void read_exact(std::istream& in, char* dst, std::streamsize n, const char* what) {
    in.read(dst, n);
    if (in.gcount() != n) throw FormatError(std::string("truncated file while reading ") + what);
}

inline std::uint32_t get_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    read_exact(in, reinterpret_cast<char*>(b), 4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& in, const char* what) {
    unsigned char b[8];
    read_exact(in, reinterpret_cast<char*>(b), 8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

}  // namespace cscomp::binio

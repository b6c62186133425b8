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

// CMPX v1: a dense complex matrix.
//
//   bytes 0-3   "CMPX"
//   byte  4     version = 1
//   byte  5     dtype = 0 (complex, two IEEE-754 doubles)
//   bytes 6-7   reserved, zero
//   bytes 8-11  rows  (u32 LE)
//   bytes 12-15 cols  (u32 LE)
//   then rows*cols values, column-major, each as (re, im) f64 LE.

#include <filesystem>
#include <iosfwd>

#include "cscomp/types.hpp"

namespace cscomp {

void write_cmpx(std::ostream& out, const CMatrix& m);
CMatrix read_cmpx(std::istream& in);

void save_cmpx(const std::filesystem::path& path, const CMatrix& m);
CMatrix load_cmpx(const std::filesystem::path& path);

}  // namespace cscomp

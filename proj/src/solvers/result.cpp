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

#include "cscomp/solvers.hpp"

#include <cmath>
#include <cstdio>

namespace cscomp {

std::string solver_csv_header() { return "algorithm,s,os,iterations,final_residual,wall_time_ms"; }

std::string solver_csv_row(const SolverResult& r, Index s, int os) {
    char buf[128];
    std::snprintf(buf, sizeof buf, ",%lld,%d,%zu,%.17g,%.6f", static_cast<long long>(s), os,
                  r.iterations, r.final_residual, r.wall_time_ms);
    return r.algorithm + buf;
}

}  // namespace cscomp

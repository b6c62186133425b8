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

#include <stdexcept>
#include <string>

namespace cscomp {

/// Invalid argument or inconsistent dimensions.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that admits no meaningful result (e.g. normalizing a zero matrix).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed CMPX / LMP1 file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown inside an iterative solver.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::size_t iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Non-finite loss during training.
class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, std::size_t layer, std::size_t batch)
        : std::runtime_error(what + " (layer " + std::to_string(layer) + ", batch " +
                             std::to_string(batch) + ")"),
          layer_(layer), batch_(batch) {}

    std::size_t layer() const noexcept { return layer_; }
    std::size_t batch() const noexcept { return batch_; }

private:
    std::size_t layer_;
    std::size_t batch_;
};

/// Invalid experiment configuration, detected before any computation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cscomp

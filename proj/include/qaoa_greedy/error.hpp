// Copyright 2026 The qaoa-greedy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception type shared by every module of the library.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qaoa_greedy {

enum class ErrorKind {
    InvalidArgument,
    Infeasible,        ///< e.g. a 3-regular graph with odd n
    GenerationFailed,  ///< retry budget exhausted
    Capacity,          ///< problem too large for a dense statevector
    DimensionMismatch,
    InvalidProblem,
    NumericalFailure,
    ContractViolation,
    Classification,
    NonConvergence,
    UnknownFormat,
    Io,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return "invalid-argument";
    case ErrorKind::Infeasible:
        return "infeasible";
    case ErrorKind::GenerationFailed:
        return "generation-failed";
    case ErrorKind::Capacity:
        return "capacity";
    case ErrorKind::DimensionMismatch:
        return "dimension-mismatch";
    case ErrorKind::InvalidProblem:
        return "invalid-problem";
    case ErrorKind::NumericalFailure:
        return "numerical-failure";
    case ErrorKind::ContractViolation:
        return "contract-violation";
    case ErrorKind::Classification:
        return "classification";
    case ErrorKind::NonConvergence:
        return "non-convergence";
    case ErrorKind::UnknownFormat:
        return "unknown-format";
    case ErrorKind::Io:
        return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind,
                    const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

} // namespace qaoa_greedy

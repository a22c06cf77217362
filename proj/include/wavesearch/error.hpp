// Copyright 2026 The wavesearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavesearch {

enum class ErrorCode {
  kInvalidDimension,
  kDimensionMismatch,
  kUnnormalized,
  kIndexOutOfRange,
  kInvalidArgument,
  kDegenerateGeometry,
  kNoConvergence,
  kNoBoundState,
  kUnsupportedGraph,
  kSolverFailure,
  kOverflow,
  kPeaksNotFound,
  kConfig,
  kIo,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnnormalized: return "unnormalized";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDegenerateGeometry: return "degenerate-geometry";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kNoBoundState: return "no-bound-state";
    case ErrorCode::kUnsupportedGraph: return "unsupported-graph";
    case ErrorCode::kSolverFailure: return "solver-failure";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kPeaksNotFound: return "peaks-not-found";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// Every failure in the library is reported through this type. what() carries
// "<code>: <message>" so the CLI can print it as a single parsable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace detail
}  // namespace wavesearch

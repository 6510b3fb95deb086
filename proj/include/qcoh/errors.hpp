// Copyright 2026 The qcoh Authors
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

namespace qcoh {

enum class ErrorCode {
    NotHermitian,
    TraceNotOne,
    NotPSD,
    NotOrthonormal,
    NotSquare,
    DimensionMismatch,
    ConvergenceFailure,
    DegenerateSpectrum,
    WeightsNotNormalized,
    PointsNotDistinct,
    InvalidArgument,
    NotFound,
    ParseError,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NOT_HERMITIAN";
        case ErrorCode::TraceNotOne: return "TRACE_NOT_ONE";
        case ErrorCode::NotPSD: return "NOT_PSD";
        case ErrorCode::NotOrthonormal: return "NOT_ORTHONORMAL";
        case ErrorCode::NotSquare: return "NOT_SQUARE";
        case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
        case ErrorCode::ConvergenceFailure: return "CONVERGENCE_FAILURE";
        case ErrorCode::DegenerateSpectrum: return "DEGENERATE_SPECTRUM";
        case ErrorCode::WeightsNotNormalized: return "WEIGHTS_NOT_NORMALIZED";
        case ErrorCode::PointsNotDistinct: return "POINTS_NOT_DISTINCT";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::NotFound: return "NOT_FOUND";
        case ErrorCode::ParseError: return "PARSE_ERROR";
    }
    return "UNKNOWN";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace qcoh

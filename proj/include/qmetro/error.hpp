// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace qmetro {

enum class ErrorCode {
  NotHermitian,
  NotUnitTrace,
  NotPositive,
  NotUnitary,
  ConvergenceFailure,
  BadSubsystemIndex,
  BadRank,
  BadProbabilities,
  NonOrthonormalBasis,
  BadPovm,
  OutOfRange,
  ParseError,
  ValidationError,
  DimMismatch,
  DegenerateSpectrum,
  SingularOutcome,
  ZeroInformation,
  TooManyCopies,
  NotPure,
  DimensionTooLarge,
  DegenerateGrid,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BadSubsystemIndex: return "BadSubsystemIndex";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadProbabilities: return "BadProbabilities";
    case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::BadPovm: return "BadPovm";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::SingularOutcome: return "SingularOutcome";
    case ErrorCode::ZeroInformation: return "ZeroInformation";
    case ErrorCode::TooManyCopies: return "TooManyCopies";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code, so
/// callers (the CLI in particular) can map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qmetro

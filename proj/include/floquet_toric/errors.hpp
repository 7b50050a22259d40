// Copyright 2026 The floquet-toric Authors
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

namespace floquet_toric {

/// Machine-readable failure categories shared by every module.
enum class ErrorCode {
  kTooLarge,
  kNonConvergence,
  kInvalidSpec,
  kPartitionImpossible,
  kUnsupportedGeometry,
  kBranchAmbiguity,
  kSiteOutOfRange,
  kOptimizationFailed,
  kMissingParams,
  kWrongCoupling,
  kZeroNorm,
  kSectorMismatch,
  kInvalidArgument,
  kIo,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kPartitionImpossible: return "PartitionImpossible";
    case ErrorCode::kUnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorCode::kBranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::kSiteOutOfRange: return "SiteOutOfRange";
    case ErrorCode::kOptimizationFailed: return "OptimizationFailed";
    case ErrorCode::kMissingParams: return "MissingParams";
    case ErrorCode::kWrongCoupling: return "WrongCoupling";
    case ErrorCode::kZeroNorm: return "ZeroNorm";
    case ErrorCode::kSectorMismatch: return "SectorMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace floquet_toric

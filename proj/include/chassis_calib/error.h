// Copyright 2026 The chassis_calib Authors
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

#ifndef CHASSIS_CALIB_ERROR_H_
#define CHASSIS_CALIB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace chassis_calib {

enum class ErrorCode {
  kInvalidInput,
  kParseError,
  kGimbalLock,
  kSingularIntrinsics,
  kInsufficientData,
  kNonUniformSampling,
  kNoWhiteNoiseRegion,
  kBehindCamera,
  kInvalidRay,
  kNoConvergence,
  kNonMonotoneTime,
  kInsufficientRotation,
  kDegenerateCovariance,
  kAmbiguousSign,
  kAntiparallelAxis,
  kTimeMisalignment,
  kEmptyOverlap,
  kUnobservable,
  kMaxIterations,
  kRankDeficient,
  kInvalidScript,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library. The code identifies the precondition
// or numerical condition that was violated; the CLI maps all of them to exit
// status 2.
class CalibError : public std::runtime_error {
 public:
  CalibError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGimbalLock: return "GimbalLock";
    case ErrorCode::kSingularIntrinsics: return "SingularIntrinsics";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kNonUniformSampling: return "NonUniformSampling";
    case ErrorCode::kNoWhiteNoiseRegion: return "NoWhiteNoiseRegion";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kInvalidRay: return "InvalidRay";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::kInsufficientRotation: return "InsufficientRotation";
    case ErrorCode::kDegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::kAmbiguousSign: return "AmbiguousSign";
    case ErrorCode::kAntiparallelAxis: return "AntiparallelAxis";
    case ErrorCode::kTimeMisalignment: return "TimeMisalignment";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kUnobservable: return "Unobservable";
    case ErrorCode::kMaxIterations: return "MaxIterations";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInvalidScript: return "InvalidScript";
  }
  return "Unknown";
}

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_ERROR_H_

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

#ifndef CHASSIS_CALIB_COMMANDS_H_
#define CHASSIS_CALIB_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "chassis_calib/extrinsic_opt.h"

// Subcommand bodies behind the chassis-calib executable. Each returns the
// process exit code: 0 success, 1 internal error, 2 bad input or a failed
// precondition. Diagnostics go to `err`.
namespace chassis_calib {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitBadInput = 2;

struct SimulateOptions {
  std::string scenario;  // standard scenario name or a scenario JSON file
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

// Writes imu.csv, odom_path.tum, vio_path.tum and truth.json.
int CmdSimulate(const SimulateOptions& opt, std::ostream& err);

struct AllanOptions {
  std::string imu_csv;
  std::string axes = "gx,gy,gz,ax,ay,az";
  std::optional<double> sample_rate;  // Hz; inferred from timestamps if unset
  std::string out_dir;
};

// Writes allan_<axis>.csv (tau, adev) per selected axis and allan_fit.json.
int CmdAllan(const AllanOptions& opt, std::ostream& err);

struct TiltOptions {
  std::string imu_csv;
  std::string config;
  std::string out;  // TiltResult JSON
  bool raw = false;  // skip intrinsic correction even if the config has it
};

int CmdTilt(const TiltOptions& opt, std::ostream& err);

struct ExtrinsicsOptions {
  std::string vio_tum;
  std::string odom_tum;
  std::string config;
  std::string tilt_json;
  bool zero_tilt = false;
  std::string out_dir;  // report.json, residuals.csv
  std::optional<double> interval;
  std::optional<LossKind> loss;
  std::optional<int> max_iterations;
};

int CmdExtrinsics(const ExtrinsicsOptions& opt, std::ostream& err);

struct ApplyImuOptions {
  std::string imu_csv;
  std::string config;
  std::string out_csv;
};

int CmdApplyImu(const ApplyImuOptions& opt, std::ostream& err);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_COMMANDS_H_

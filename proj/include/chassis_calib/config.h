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

#ifndef CHASSIS_CALIB_CONFIG_H_
#define CHASSIS_CALIB_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "chassis_calib/allan.h"
#include "chassis_calib/camera_model.h"
#include "chassis_calib/chassis_model.h"
#include "chassis_calib/extrinsic_opt.h"
#include "chassis_calib/imu_model.h"
#include "chassis_calib/pca_calib.h"
#include "chassis_calib/sim.h"

// JSON schemas for configuration, scenarios and reports. Angles are stored
// in degrees in every file; everything in memory is radians. Unknown keys
// are rejected with kParseError.
namespace chassis_calib {

using Json = nlohmann::ordered_json;

enum class CameraKind { kPinhole, kUnified };

struct CameraConfig {
  std::string name;
  CameraKind kind = CameraKind::kPinhole;
  UnifiedModel model;  // zeta unused for pinhole
  Eigen::Matrix4d T_C_B = Eigen::Matrix4d::Identity();
};

struct ChassisConfig {
  MecanumGeometry geometry;
  ChassisScale scale;
  Eigen::Vector3d velocity_noise_std = Eigen::Vector3d::Zero();
};

struct MountingConfig {
  EulerYPR prior_ypr;  // radians
  double p_Bz_O = 0.0;

  Rot3 PriorRot() const { return RotFromYpr(prior_ypr); }
};

struct SolverBlock {
  SolverConfig solver;
  double interval = kDefaultPairInterval;
  bool x0_given = false;  // otherwise callers seed theta from the mounting prior
};

struct TiltBlock {
  double min_rate = 0.2;
  double still_duration = 1.0;
};

struct Config {
  std::optional<ImuIntrinsics> imu;
  std::optional<ImuNoiseParams> imu_noise;  // nested in the imu block
  std::vector<CameraConfig> cameras;
  std::optional<ChassisConfig> chassis;
  std::optional<MountingConfig> mounting;
  std::optional<SolverBlock> solver;
  std::optional<TiltBlock> tilt;
};

Config ConfigFromJson(const Json& j);
Json ConfigToJson(const Config& c);
Config LoadConfig(const std::string& path);

// The shipped reference platform: BMI055 IMU, ZR300 cameras.
Config ReferenceConfig();

Json ImuIntrinsicsToJson(const ImuIntrinsics& intr);
ImuIntrinsics ImuIntrinsicsFromJson(const Json& j);
Json ImuNoiseToJson(const ImuNoiseParams& n);
ImuNoiseParams ImuNoiseFromJson(const Json& j);

Json TiltToJson(const TiltResult& t);
TiltResult TiltFromJson(const Json& j);

Json ExtrinsicsToJson(const ExtrinsicParams& x);
ExtrinsicParams ExtrinsicsFromJson(const Json& j);

// Includes x* in SI/radians and in display units (degrees, percent).
Json SolveReportToJson(const SolveReport& r);
SolveReport SolveReportFromJson(const Json& j);

Json AllanFitToJson(const AllanFit& f);
AllanFit AllanFitFromJson(const Json& j);

Json ScenarioToJson(const ScenarioSpec& s);
ScenarioSpec ScenarioFromJson(const Json& j);

Json TruthToJson(const Truth& t, const ScenarioSpec& spec);

struct Provenance {
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::string tool_version;
  double data_t_begin = 0.0;  // s, data clock
  double data_t_end = 0.0;
};

struct CalibrationReport {
  TiltResult tilt;
  SolveReport extrinsics;
  Provenance provenance;
};

Json ReportToJson(const CalibrationReport& r);
CalibrationReport ReportFromJson(const Json& j);

// Pretty-printed with a trailing newline.
std::string DumpJson(const Json& j);
Json ParseJson(const std::string& text, const std::string& source);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_CONFIG_H_

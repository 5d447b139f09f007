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

#ifndef CHASSIS_CALIB_SIM_H_
#define CHASSIS_CALIB_SIM_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "chassis_calib/chassis_model.h"
#include "chassis_calib/extrinsic_opt.h"
#include "chassis_calib/imu_model.h"
#include "chassis_calib/trajectory.h"

namespace chassis_calib {

inline constexpr double kGravity = 9.8;  // m/s^2

enum class SegmentType { kPause, kLine, kArc, kSpin };

// One piece of a planar motion script. Speed and yaw-rate profiles are
// trapezoids: linear ramp up over `ramp` seconds, hold, linear ramp down.
struct MotionSegment {
  SegmentType type = SegmentType::kPause;
  double duration = 0.0;     // s
  double ramp = 0.5;         // s, each end
  double speed = 0.0;        // m/s, peak (line, arc)
  double direction = 0.0;    // rad, travel direction in the body frame at segment start
  double curvature = 0.0;    // 1/m, path curvature (arc)
  bool heading_locked = false;  // arc: strafe along the curve at fixed heading
  double omega = 0.0;        // rad/s, peak (spin)
};

struct VioNoise {
  double position_std = 0.0;  // m, white per sample
  double yaw_std = 0.0;       // rad, white per sample
  double drift_rate = 0.0;    // m/sqrt(s), position random walk
};

// Ground-truth mounting of the IMU on the chassis.
struct Mounting {
  Eigen::Vector2d p_F_O = Eigen::Vector2d::Zero();  // m
  double theta_F_O = 0.0;                            // rad
  double pitch = 0.0;                                // rad, of B relative to F
  double roll = 0.0;                                 // rad
  double p_Bz_O = 0.0;                               // m

  Rot3 RotBO() const;
  Pose3 PoseBO() const;
};

struct ScenarioSpec {
  std::string name;
  double duration = 0.0;  // s
  double sample_rate_imu = 200.0;
  double sample_rate_odom = 100.0;
  std::vector<MotionSegment> motion_script;
  Mounting mounting;
  ImuIntrinsics imu;
  ImuNoiseParams imu_noise;
  ChassisScale chassis_scale;
  Eigen::Vector3d velocity_noise_std = Eigen::Vector3d::Zero();  // per odometry sample
  VioNoise vio_noise;
  std::uint64_t seed = 1;

  // Throws kInvalidScript.
  void Validate() const;

  ExtrinsicParams TrueExtrinsics() const;
};

// Analytic chassis state in the world frame (chassis starts at the origin
// with zero heading).
struct ChassisState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double yaw = 0.0;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();      // world
  Eigen::Vector2d acceleration = Eigen::Vector2d::Zero();  // world
  double yaw_rate = 0.0;
  double yaw_accel = 0.0;

  BodyVelocity BodyVel() const;
};

class MotionTrajectory {
 public:
  explicit MotionTrajectory(std::vector<MotionSegment> script);

  ChassisState At(double t) const;
  double duration() const { return starts_.empty() ? 0.0 : starts_.back(); }

 private:
  std::vector<MotionSegment> script_;
  std::vector<double> starts_;  // cumulative start times, plus the end
  std::vector<ChassisState> start_states_;
};

struct ImuTruth {
  Eigen::Vector3d gyro = Eigen::Vector3d::Zero();   // rad/s in B
  Eigen::Vector3d accel = Eigen::Vector3d::Zero();  // specific force in B
};

// Noise-free IMU reading for a chassis state (lever-arm terms included).
ImuTruth TrueImu(const ChassisState& state, const Mounting& mounting);

struct Truth {
  Mounting mounting;
  ExtrinsicParams extrinsics;
  ChassisScale chassis_scale;
  ImuIntrinsics imu;
  ImuNoiseParams imu_noise;
  Pose3 T_W_V;  // world expressed in the VIO frame
  std::vector<TimedPose2> chassis_path;  // at odometry rate
};

struct Dataset {
  std::vector<ImuSample> imu_stream;
  std::vector<TimedPose2> odom_path;  // dead-reckoned, uncorrected scales
  std::vector<TimedPose3> vio_path;   // IMU poses in the VIO frame
  Truth truth;
};

// Fixed offset between the simulated world and the VIO frame; relative poses
// are unaffected by it.
Pose3 VioWorldOffset();

Dataset Generate(const ScenarioSpec& spec);

struct NamedScenario {
  std::string name;
  ScenarioSpec spec;
};

// "tilt-cal", "extrinsics-cal", "still-10h".
std::vector<NamedScenario> StandardScenarios();

// Throws kInvalidScript for an unknown name.
ScenarioSpec StandardScenario(const std::string& name);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_SIM_H_

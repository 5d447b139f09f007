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

#ifndef CHASSIS_CALIB_CHASSIS_MODEL_H_
#define CHASSIS_CALIB_CHASSIS_MODEL_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "chassis_calib/geometry.h"
#include "chassis_calib/rng.h"
#include "chassis_calib/trajectory.h"

namespace chassis_calib {

// Diagonal of K in  v_measured = K v_true + eta. Also used to carry the
// inverse scales when correcting.
struct ChassisScale {
  double s_x = 1.0;
  double s_y = 1.0;
  double s_z = 1.0;

  void Validate() const;
  ChassisScale Inverse() const { return {1.0 / s_x, 1.0 / s_y, 1.0 / s_z}; }
};

struct BodyVelocity {
  double vx = 0.0;     // m/s, forward
  double vy = 0.0;     // m/s, left
  double omega = 0.0;  // rad/s, yaw rate
};

struct TimedVelocity {
  double t = 0.0;
  BodyVelocity v;
};

struct MecanumGeometry {
  double wheel_radius = 0.05;  // m
  double half_length = 0.20;   // m, center to front axle (a)
  double half_width = 0.20;    // m, center to wheel plane (b)

  void Validate() const;
};

BodyVelocity MeasureVelocity(const BodyVelocity& v, const ChassisScale& k,
                             const Eigen::Vector3d& noise_std, Rng& rng);

// X-configuration, 45 degree rollers. Order: front-left, front-right,
// rear-left, rear-right; rad/s.
Eigen::Vector4d WheelSpeedsFromBody(const BodyVelocity& v, const MecanumGeometry& g);

// Least-squares inverse of WheelSpeedsFromBody.
BodyVelocity BodyFromWheelSpeeds(const Eigen::Vector4d& w, const MecanumGeometry& g);

// Midpoint SE(2) integration of corrected velocities (k_inv applied
// per axis), starting at the identity pose at the first timestamp.
// Throws kNonMonotoneTime unless timestamps strictly increase.
std::vector<TimedPose2> DeadReckon(std::span<const TimedVelocity> measured,
                                   const ChassisScale& k_inv);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_CHASSIS_MODEL_H_

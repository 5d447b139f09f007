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

#include "chassis_calib/chassis_model.h"

#include <cmath>

#include "chassis_calib/error.h"

namespace chassis_calib {

void ChassisScale::Validate() const {
  if (!(s_x > 0.0) || !(s_y > 0.0) || !(s_z > 0.0) || !std::isfinite(s_x) ||
      !std::isfinite(s_y) || !std::isfinite(s_z)) {
    throw CalibError(ErrorCode::kInvalidInput, "chassis scales must be positive");
  }
}

void MecanumGeometry::Validate() const {
  if (!(wheel_radius > 0.0) || !(half_length > 0.0) || !(half_width > 0.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "Mecanum geometry must be positive");
  }
}

BodyVelocity MeasureVelocity(const BodyVelocity& v, const ChassisScale& k,
                             const Eigen::Vector3d& noise_std, Rng& rng) {
  const Eigen::Vector3d eta = noise_std.cwiseProduct(rng.Normal3());
  return {k.s_x * v.vx + eta.x(), k.s_y * v.vy + eta.y(), k.s_z * v.omega + eta.z()};
}

Eigen::Vector4d WheelSpeedsFromBody(const BodyVelocity& v, const MecanumGeometry& g) {
  g.Validate();
  const double l = g.half_length + g.half_width;
  const double r = g.wheel_radius;
  return Eigen::Vector4d(v.vx - v.vy - l * v.omega, v.vx + v.vy + l * v.omega,
                         v.vx + v.vy - l * v.omega, v.vx - v.vy + l * v.omega) /
         r;
}

BodyVelocity BodyFromWheelSpeeds(const Eigen::Vector4d& w, const MecanumGeometry& g) {
  g.Validate();
  const double l = g.half_length + g.half_width;
  const double r4 = g.wheel_radius / 4.0;
  return {r4 * (w[0] + w[1] + w[2] + w[3]), r4 * (-w[0] + w[1] + w[2] - w[3]),
          r4 / l * (-w[0] + w[1] - w[2] + w[3])};
}

std::vector<TimedPose2> DeadReckon(std::span<const TimedVelocity> measured,
                                   const ChassisScale& k_inv) {
  std::vector<TimedPose2> path;
  if (measured.empty()) return path;
  path.reserve(measured.size());

  auto corrected = [&k_inv](const BodyVelocity& v) {
    return Eigen::Vector3d(k_inv.s_x * v.vx, k_inv.s_y * v.vy, k_inv.s_z * v.omega);
  };

  double yaw = 0.0;
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  path.push_back({measured[0].t, Pose2{}});
  Eigen::Vector3d prev = corrected(measured[0].v);
  for (std::size_t i = 1; i < measured.size(); ++i) {
    const double dt = measured[i].t - measured[i - 1].t;
    if (!(dt > 0.0)) {
      throw CalibError(ErrorCode::kNonMonotoneTime,
                       "velocity timestamps must be strictly increasing");
    }
    const Eigen::Vector3d cur = corrected(measured[i].v);
    const Eigen::Vector3d mean = 0.5 * (prev + cur);
    const double yaw_next = yaw + mean.z() * dt;
    const double yaw_mid = 0.5 * (yaw + yaw_next);
    p += Rot2{yaw_mid} * Eigen::Vector2d(mean.x(), mean.y()) * dt;
    yaw = yaw_next;
    path.push_back({measured[i].t, Pose2{Rot2{WrapAngle(yaw)}, p}});
    prev = cur;
  }
  return path;
}

}  // namespace chassis_calib

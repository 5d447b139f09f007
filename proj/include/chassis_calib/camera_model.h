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

#ifndef CHASSIS_CALIB_CAMERA_MODEL_H_
#define CHASSIS_CALIB_CAMERA_MODEL_H_

#include <Eigen/Core>

namespace chassis_calib {

struct PinholeIntrinsics {
  double fx = 1.0, fy = 1.0;  // pixels
  double cx = 0.0, cy = 0.0;  // pixels
  double alpha = 0.0;         // skew; K(0,1) = fx * alpha

  Eigen::Matrix3d K() const;
  void Validate() const;
};

// Radial (k1, k2, k3) and tangential (p1, p2) lens distortion. k3 is left at
// zero unless a calibration supplies it.
struct DistortionParams {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
  double p1 = 0.0, p2 = 0.0;
};

// Mirror-plus-pinhole model; zeta = 0 is the plain pinhole camera.
struct UnifiedModel {
  PinholeIntrinsics pinhole;
  DistortionParams dist;
  double zeta = 0.0;

  void Validate() const;
};

// Factory calibration of the RealSense ZR300 color and fisheye imagers.
PinholeIntrinsics Zr300RgbIntrinsics();
DistortionParams Zr300RgbDistortion();
UnifiedModel Zr300FisheyeModel();

Eigen::Vector2d Distort(const Eigen::Vector2d& xy, const DistortionParams& dist);

// Inverts Distort by fixed-point iteration; kNoConvergence after 50 steps.
Eigen::Vector2d Undistort(const Eigen::Vector2d& xy_d, const DistortionParams& dist);

// kBehindCamera when P.z <= 0.
Eigen::Vector2d ProjectPinhole(const Eigen::Vector3d& P, const PinholeIntrinsics& intr,
                               const DistortionParams& dist);

// Normalises by P.z + zeta |P|; kInvalidRay when that is <= 0.
Eigen::Vector2d ProjectUnified(const Eigen::Vector3d& P, const UnifiedModel& model);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_CAMERA_MODEL_H_

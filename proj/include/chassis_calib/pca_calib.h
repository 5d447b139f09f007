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

#ifndef CHASSIS_CALIB_PCA_CALIB_H_
#define CHASSIS_CALIB_PCA_CALIB_H_

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "chassis_calib/geometry.h"
#include "chassis_calib/imu_model.h"

namespace chassis_calib {

// Pitch and roll of the IMU frame B relative to the chassis plane, recovered
// from the dominant rotation axis of planar-motion gyro data.
struct TiltResult {
  double pitch = 0.0;  // rad
  double roll = 0.0;   // rad
  Eigen::Vector3d v_max = Eigen::Vector3d::UnitZ();  // chassis z axis seen in B
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();  // descending
  std::size_t n_samples = 0;

  // Rotation B -> F (zero yaw).
  Rot3 RotBF() const { return RotFromYpr({0.0, pitch, roll}); }
};

struct TiltConfig {
  double min_rate = 0.2;        // rad/s, admission threshold on |w|
  double still_duration = 1.0;  // s, leading stationary window for bias removal
  Rot3 prior_R_B_O;             // coarse mounting guess, sign disambiguation only

  void Validate() const;
};

inline constexpr std::size_t kMinTiltSamples = 100;

// Rows w_i and -w_i for every sample with |w_i| >= min_rate, so the column
// means are exactly zero. kInsufficientRotation below kMinTiltSamples.
Eigen::MatrixX3d BuildDataset(std::span<const Eigen::Vector3d> gyro, const TiltConfig& cfg);

struct PrincipalAxis {
  Eigen::Vector3d eigenvalues;  // descending
  Eigen::Vector3d v_max;        // unit, largest-magnitude component positive
};

// Eigen-decomposition of X^T X / (K - 1), K = rows / 2. Fails with
// kDegenerateCovariance when the top eigenvalue is < 1e-12 or not separated
// from the second by 1e-9 relative.
PrincipalAxis PrincipalAxisOf(const Eigen::MatrixX3d& X);

// Flips v so that (prior * v) . e_z > 0; kAmbiguousSign if |.| < 1e-3.
Eigen::Vector3d DisambiguateSign(const Eigen::Vector3d& v, const Rot3& prior);

// Exact rotation taking v onto e_z (axis v x e_z, angle atan2(|v x e_z|, v.e_z)).
// kAntiparallelAxis when v points along -e_z.
Rot3 AlignToZ(const Eigen::Vector3d& v);

struct PitchRoll {
  double pitch = 0.0;
  double roll = 0.0;
};

PitchRoll TiltFromAxis(const Eigen::Vector3d& v);

// Mean gyro reading over the leading still_duration seconds.
Eigen::Vector3d EstimateStillBias(std::span<const ImuSample> samples, double still_duration);

// Bias removal, dataset, principal axis, sign, and tilt extraction.
TiltResult CalibrateTilt(std::span<const ImuSample> samples, const TiltConfig& cfg);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_PCA_CALIB_H_

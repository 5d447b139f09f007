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

#ifndef CHASSIS_CALIB_IMU_MODEL_H_
#define CHASSIS_CALIB_IMU_MODEL_H_

#include <Eigen/Core>

#include "chassis_calib/rng.h"

namespace chassis_calib {

// Systematic IMU errors. Corrected (orthogonal-frame) values relate to raw
// sensor values by  a_o = T_a K_a (a_s + b_a),  w_o = T_g K_g (w_s + b_g).
struct ImuIntrinsics {
  Eigen::Matrix3d T_a = Eigen::Matrix3d::Identity();  // unit upper triangular
  Eigen::Vector3d k_a = Eigen::Vector3d::Ones();      // diag(K_a)
  Eigen::Vector3d b_a = Eigen::Vector3d::Zero();      // m/s^2
  Eigen::Matrix3d T_g = Eigen::Matrix3d::Identity();  // unit diagonal
  Eigen::Vector3d k_g = Eigen::Vector3d::Ones();      // diag(K_g)
  Eigen::Vector3d b_g = Eigen::Vector3d::Zero();      // rad/s

  static ImuIntrinsics Identity() { return {}; }

  // Throws CalibError(kInvalidInput) on a malformed T matrix and
  // CalibError(kSingularIntrinsics) on a non-positive scale.
  void Validate() const;
};

// Stochastic IMU errors, all as continuous-time densities.
struct ImuNoiseParams {
  Eigen::Vector3d accel_white = Eigen::Vector3d::Zero();             // m/s^2/sqrt(Hz)
  Eigen::Vector3d gyro_white = Eigen::Vector3d::Zero();              // rad/s/sqrt(Hz)
  Eigen::Vector3d accel_bias_instability = Eigen::Vector3d::Zero();  // m/s^3/sqrt(Hz)
  Eigen::Vector3d gyro_bias_instability = Eigen::Vector3d::Zero();   // rad/s^2/sqrt(Hz)

  void Validate() const;
};

struct ImuSample {
  double t = 0.0;
  Eigen::Vector3d gyro = Eigen::Vector3d::Zero();
  Eigen::Vector3d accel = Eigen::Vector3d::Zero();
};

// BMI055 bench calibration: zero offsets and scale factors from the vendor
// characterisation run plus the fitted axis-deviation matrices.
ImuIntrinsics Bmi055Intrinsics();
ImuNoiseParams Bmi055Noise();

Eigen::Vector3d CorrectAccel(const Eigen::Vector3d& a_raw, const ImuIntrinsics& intr);
Eigen::Vector3d CorrectGyro(const Eigen::Vector3d& w_raw, const ImuIntrinsics& intr);

// Inverse of the correction plus discrete white noise with
// sigma = density / sqrt(dt).
Eigen::Vector3d SimulateAccel(const Eigen::Vector3d& a_true, const ImuIntrinsics& intr,
                              const ImuNoiseParams& noise, double dt, Rng& rng);
Eigen::Vector3d SimulateGyro(const Eigen::Vector3d& w_true, const ImuIntrinsics& intr,
                             const ImuNoiseParams& noise, double dt, Rng& rng);

// One random-walk step: b + w sqrt(dt), w ~ N(0, instability^2) per axis.
Eigen::Vector3d EvolveBias(const Eigen::Vector3d& b, const Eigen::Vector3d& instability,
                           double dt, Rng& rng);

// Worst-case levelling error (rad) from reading the tilt off gravity with an
// accelerometer whose horizontal error is accel_error.
double AccelLevellingError(double accel_error, double gravity);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_IMU_MODEL_H_

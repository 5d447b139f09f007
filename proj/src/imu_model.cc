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

#include "chassis_calib/imu_model.h"

#include <cmath>

#include <Eigen/LU>

#include "chassis_calib/error.h"

namespace chassis_calib {

namespace {

void CheckPositiveDt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw CalibError(ErrorCode::kInvalidInput, "dt must be positive");
  }
}

void CheckScales(const Eigen::Vector3d& k, const char* name) {
  if (!k.allFinite() || (k.array() <= 0.0).any()) {
    throw CalibError(ErrorCode::kSingularIntrinsics,
                     std::string(name) + " has a non-positive diagonal entry");
  }
}

Eigen::Vector3d Simulate(const Eigen::Vector3d& truth, const Eigen::Matrix3d& t,
                         const Eigen::Vector3d& k, const Eigen::Vector3d& b,
                         const Eigen::Vector3d& density, double dt, Rng& rng) {
  // Drawn unconditionally so the stream position does not depend on density.
  const Eigen::Vector3d w = rng.Normal3();
  const Eigen::Vector3d eta = density.cwiseProduct(w) / std::sqrt(dt);
  const Eigen::Vector3d unscaled = t.partialPivLu().solve(truth);
  return unscaled.cwiseQuotient(k) - b - eta;
}

}  // namespace

void ImuIntrinsics::Validate() const {
  for (int i = 0; i < 3; ++i) {
    if (T_a(i, i) != 1.0 || T_g(i, i) != 1.0) {
      throw CalibError(ErrorCode::kInvalidInput, "axis-deviation diagonal must be 1");
    }
  }
  if (T_a(1, 0) != 0.0 || T_a(2, 0) != 0.0 || T_a(2, 1) != 0.0) {
    throw CalibError(ErrorCode::kInvalidInput, "T_a must be upper triangular");
  }
  if (!T_a.allFinite() || !T_g.allFinite() || !b_a.allFinite() || !b_g.allFinite()) {
    throw CalibError(ErrorCode::kInvalidInput, "non-finite intrinsics");
  }
  CheckScales(k_a, "K_a");
  CheckScales(k_g, "K_g");
}

void ImuNoiseParams::Validate() const {
  for (const auto* v : {&accel_white, &gyro_white, &accel_bias_instability,
                        &gyro_bias_instability}) {
    if (!v->allFinite() || (v->array() < 0.0).any()) {
      throw CalibError(ErrorCode::kInvalidInput, "noise densities must be >= 0");
    }
  }
}

ImuIntrinsics Bmi055Intrinsics() {
  ImuIntrinsics intr;
  intr.T_a << 1.0, -0.0388, -0.0025,
              0.0, 1.0, 0.0223,
              0.0, 0.0, 1.0;
  intr.k_a << 1.01807, 1.01469, 1.00625;
  intr.b_a << 0.080551, 0.119632, -0.340042;
  intr.T_g << 1.0, -0.0573, 0.00110,
              0.0647, 1.0, 0.01660,
              0.0038, -0.0150, 1.0;
  intr.k_g << 0.99514, 1.00125, 0.99586;
  intr.b_g << -0.0032665, -0.0044932, 0.0010749;
  return intr;
}

ImuNoiseParams Bmi055Noise() {
  ImuNoiseParams n;
  n.gyro_white << 2.938e-3, 4.813e-3, 6.184e-3;
  n.gyro_bias_instability << 1.352e-5, 1.085e-5, 1.920e-5;
  n.accel_white << 1.103e-1, 2.980e-2, 3.271e-2;
  n.accel_bias_instability << 1.194e-3, 1.996e-4, 2.904e-4;
  return n;
}

Eigen::Vector3d CorrectAccel(const Eigen::Vector3d& a_raw, const ImuIntrinsics& intr) {
  return intr.T_a * (intr.k_a.cwiseProduct(a_raw + intr.b_a));
}

Eigen::Vector3d CorrectGyro(const Eigen::Vector3d& w_raw, const ImuIntrinsics& intr) {
  return intr.T_g * (intr.k_g.cwiseProduct(w_raw + intr.b_g));
}

Eigen::Vector3d SimulateAccel(const Eigen::Vector3d& a_true, const ImuIntrinsics& intr,
                              const ImuNoiseParams& noise, double dt, Rng& rng) {
  CheckPositiveDt(dt);
  CheckScales(intr.k_a, "K_a");
  return Simulate(a_true, intr.T_a, intr.k_a, intr.b_a, noise.accel_white, dt, rng);
}

Eigen::Vector3d SimulateGyro(const Eigen::Vector3d& w_true, const ImuIntrinsics& intr,
                             const ImuNoiseParams& noise, double dt, Rng& rng) {
  CheckPositiveDt(dt);
  CheckScales(intr.k_g, "K_g");
  return Simulate(w_true, intr.T_g, intr.k_g, intr.b_g, noise.gyro_white, dt, rng);
}

Eigen::Vector3d EvolveBias(const Eigen::Vector3d& b, const Eigen::Vector3d& instability,
                           double dt, Rng& rng) {
  CheckPositiveDt(dt);
  return b + instability.cwiseProduct(rng.Normal3()) * std::sqrt(dt);
}

double AccelLevellingError(double accel_error, double gravity) {
  if (!(gravity > 0.0) || !std::isfinite(accel_error)) {
    throw CalibError(ErrorCode::kInvalidInput, "gravity must be positive");
  }
  return std::atan(std::abs(accel_error) / gravity);
}

}  // namespace chassis_calib

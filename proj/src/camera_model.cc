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

#include "chassis_calib/camera_model.h"

#include <cmath>

#include "chassis_calib/error.h"

namespace chassis_calib {

namespace {

constexpr int kUndistortMaxIter = 50;
constexpr double kUndistortStepTol = 1e-10;

double RadialFactor(double r2, const DistortionParams& d) {
  return 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
}

Eigen::Vector2d Tangential(const Eigen::Vector2d& xy, double r2, const DistortionParams& d) {
  const double x = xy.x(), y = xy.y();
  return {2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x),
          d.p1 * (r2 + 2.0 * y * y) + 2.0 * d.p2 * x * y};
}

Eigen::Vector2d ToPixel(const Eigen::Vector2d& xy, const PinholeIntrinsics& k) {
  return {k.fx * xy.x() + k.fx * k.alpha * xy.y() + k.cx, k.fy * xy.y() + k.cy};
}

}  // namespace

Eigen::Matrix3d PinholeIntrinsics::K() const {
  Eigen::Matrix3d k;
  k << fx, fx * alpha, cx, 0, fy, cy, 0, 0, 1;
  return k;
}

void PinholeIntrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "focal lengths must be positive");
  }
}

void UnifiedModel::Validate() const {
  pinhole.Validate();
  if (!(zeta >= 0.0)) throw CalibError(ErrorCode::kInvalidInput, "zeta must be >= 0");
}

PinholeIntrinsics Zr300RgbIntrinsics() {
  return {.fx = 617.92, .fy = 618.54, .cx = 316.07, .cy = 244.96, .alpha = 0.0};
}

DistortionParams Zr300RgbDistortion() {
  return {.k1 = 0.1182, .k2 = -0.2507, .k3 = 0.0, .p1 = -4.410e-4, .p2 = 2.824e-4};
}

UnifiedModel Zr300FisheyeModel() {
  UnifiedModel m;
  m.pinhole = {.fx = 761.95, .fy = 761.42, .cx = 309.99, .cy = 234.27, .alpha = 0.0};
  m.dist = {.k1 = -0.07772, .k2 = 0.2731, .k3 = 0.0, .p1 = -2.380e-3, .p2 = 3.120e-3};
  m.zeta = 1.743;
  return m;
}

Eigen::Vector2d Distort(const Eigen::Vector2d& xy, const DistortionParams& dist) {
  const double r2 = xy.squaredNorm();
  return xy * RadialFactor(r2, dist) + Tangential(xy, r2, dist);
}

Eigen::Vector2d Undistort(const Eigen::Vector2d& xy_d, const DistortionParams& dist) {
  Eigen::Vector2d xy = xy_d;
  for (int it = 0; it < kUndistortMaxIter; ++it) {
    const double r2 = xy.squaredNorm();
    const Eigen::Vector2d next = (xy_d - Tangential(xy, r2, dist)) / RadialFactor(r2, dist);
    const double step = (next - xy).norm();
    xy = next;
    if (step < kUndistortStepTol) return xy;
  }
  throw CalibError(ErrorCode::kNoConvergence, "undistortion did not converge in 50 iterations");
}

Eigen::Vector2d ProjectPinhole(const Eigen::Vector3d& P, const PinholeIntrinsics& intr,
                               const DistortionParams& dist) {
  if (!(P.z() > 0.0)) throw CalibError(ErrorCode::kBehindCamera, "point has z <= 0");
  const Eigen::Vector2d xy(P.x() / P.z(), P.y() / P.z());
  return ToPixel(Distort(xy, dist), intr);
}

Eigen::Vector2d ProjectUnified(const Eigen::Vector3d& P, const UnifiedModel& model) {
  const double denom = P.z() + model.zeta * P.norm();
  if (P.isZero(0.0) || !(denom > 0.0)) {
    throw CalibError(ErrorCode::kInvalidRay, "ray cannot be projected (z + zeta|P| <= 0)");
  }
  const Eigen::Vector2d xy(P.x() / denom, P.y() / denom);
  return ToPixel(Distort(xy, model.dist), model.pinhole);
}

}  // namespace chassis_calib

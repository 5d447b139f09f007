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

#include "chassis_calib/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "chassis_calib/error.h"

namespace chassis_calib {

namespace {

constexpr double kRotTol = 1e-9;
constexpr double kGimbalTol = 1e-9;

}  // namespace

double WrapAngle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Rot3 Rot3::FromMatrix(const Eigen::Matrix3d& m) {
  if (!m.allFinite()) {
    throw CalibError(ErrorCode::kInvalidInput, "rotation matrix is not finite");
  }
  const double orth = (m * m.transpose() - Eigen::Matrix3d::Identity())
                          .cwiseAbs()
                          .maxCoeff();
  const double det = m.determinant();
  if (orth > kRotTol || std::abs(det - 1.0) > kRotTol) {
    std::ostringstream os;
    os << "matrix is not a rotation (|RR^T - I| = " << orth
       << ", det = " << det << ")";
    throw CalibError(ErrorCode::kInvalidInput, os.str());
  }
  return Rot3(m);
}

Eigen::Matrix2d Rot2::matrix() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

Eigen::Vector2d Rot2::operator*(const Eigen::Vector2d& v) const {
  return matrix() * v;
}

Rot3 RotZ(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return Rot3::FromMatrix(m);
}

Rot3 RotFromYpr(const EulerYPR& e) {
  const double c1 = std::cos(e.yaw), s1 = std::sin(e.yaw);
  const double c2 = std::cos(e.pitch), s2 = std::sin(e.pitch);
  const double c3 = std::cos(e.roll), s3 = std::sin(e.roll);
  Eigen::Matrix3d rz, ry, rx;
  rz << c1, -s1, 0, s1, c1, 0, 0, 0, 1;
  ry << c2, 0, s2, 0, 1, 0, -s2, 0, c2;
  rx << 1, 0, 0, 0, c3, -s3, 0, s3, c3;
  return Rot3::FromMatrix(rz * ry * rx);
}

EulerYPR YprFromRot(const Rot3& r) {
  const Eigen::Matrix3d& m = r.matrix();
  if (std::abs(m(2, 0)) > 1.0 - kGimbalTol) {
    throw CalibError(ErrorCode::kGimbalLock, "pitch at +-90 degrees");
  }
  EulerYPR e;
  e.yaw = std::atan2(m(1, 0), m(0, 0));
  const double cy = std::cos(e.yaw);
  const double sy = std::sin(e.yaw);
  e.pitch = std::atan2(-m(2, 0), m(0, 0) * cy + m(1, 0) * sy);
  e.roll = std::atan2(m(0, 2) * sy - m(1, 2) * cy, -m(0, 1) * sy + m(1, 1) * cy);
  e.yaw = WrapAngle(e.yaw);
  e.roll = WrapAngle(e.roll);
  return e;
}

Eigen::Matrix3d Skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

Rot3 RotFromAxisAngle(const AxisAngle& a) {
  const double phi = a.theta.norm();
  if (phi == 0.0) return Rot3::Identity();
  const Eigen::Vector3d u = a.theta / phi;
  const Eigen::Matrix3d k = Skew(u);
  const Eigen::Matrix3d m = Eigen::Matrix3d::Identity() + std::sin(phi) * k +
                            (1.0 - std::cos(phi)) * k * k;
  return Rot3::FromMatrix(m);
}

AxisAngle AxisAngleFromRot(const Rot3& r) {
  const Eigen::Matrix3d& m = r.matrix();
  // w = u sin(phi), c = cos(phi)
  const Eigen::Vector3d w(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
                          0.5 * (m(1, 0) - m(0, 1)));
  const double s = w.norm();
  const double c = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  const double phi = std::atan2(s, c);

  AxisAngle out;
  if (c >= 0.0) {
    if (s < 1e-300) return out;
    out.theta = w * (phi / s);
    return out;
  }
  // (R + R^T)/2 - c I = (1 - c) u u^T; take the best-conditioned column.
  const Eigen::Matrix3d b =
      (0.5 * (m + m.transpose()) - c * Eigen::Matrix3d::Identity()) / (1.0 - c);
  int k = 0;
  b.diagonal().maxCoeff(&k);
  Eigen::Vector3d u = b.col(k) / std::sqrt(b(k, k));
  if (u.dot(w) < 0.0) u = -u;
  out.theta = u * phi;
  return out;
}

Pose3 Compose(const Pose3& a, const Pose3& b) {
  return {a.rot * b.rot, a.rot * b.p + a.p};
}

Pose3 Inverse(const Pose3& a) {
  const Rot3 rt = a.rot.inverse();
  return {rt, -(rt * a.p)};
}

Pose2 Compose(const Pose2& a, const Pose2& b) {
  return {Rot2{WrapAngle(a.rot.theta + b.rot.theta)}, a.rot * b.p + a.p};
}

Pose2 Inverse(const Pose2& a) {
  const Rot2 rt = a.rot.inverse();
  return {rt, -(rt * a.p)};
}

}  // namespace chassis_calib

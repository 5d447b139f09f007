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

#ifndef CHASSIS_CALIB_GEOMETRY_H_
#define CHASSIS_CALIB_GEOMETRY_H_

#include <numbers>

#include <Eigen/Core>

namespace chassis_calib {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double DegToRad(double deg) { return deg * kPi / 180.0; }
inline constexpr double RadToDeg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle into (-pi, pi].
double WrapAngle(double angle);

// Z-Y'-X'' Euler angles. Canonical range: yaw, roll in (-pi, pi], pitch in
// [-pi/2, pi/2].
struct EulerYPR {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

// Rotation vector: unit axis scaled by the rotation angle.
struct AxisAngle {
  Eigen::Vector3d theta = Eigen::Vector3d::Zero();

  double angle() const { return theta.norm(); }
};

// Element of SO(3). Construction from a raw matrix checks orthonormality and
// det = +1 to 1e-9.
class Rot3 {
 public:
  Rot3() : m_(Eigen::Matrix3d::Identity()) {}

  static Rot3 FromMatrix(const Eigen::Matrix3d& m);
  static Rot3 Identity() { return Rot3(); }

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  Rot3 operator*(const Rot3& other) const { return Rot3(m_ * other.m_); }
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return m_ * v; }
  Rot3 inverse() const { return Rot3(m_.transpose()); }

 private:
  explicit Rot3(const Eigen::Matrix3d& m) : m_(m) {}

  Eigen::Matrix3d m_;
};

// Planar rotation by theta (radians).
struct Rot2 {
  double theta = 0.0;

  Eigen::Matrix2d matrix() const;
  Rot2 operator*(const Rot2& other) const { return {theta + other.theta}; }
  Eigen::Vector2d operator*(const Eigen::Vector2d& v) const;
  Rot2 inverse() const { return {-theta}; }
};

struct Pose2 {
  Rot2 rot;
  Eigen::Vector2d p = Eigen::Vector2d::Zero();

  double yaw() const { return rot.theta; }
};

// T^{S1}_{S2}, named T_S2_S1 in code: maps points expressed in S2 into S1.
struct Pose3 {
  Rot3 rot;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
};

Rot3 RotFromYpr(const EulerYPR& e);

// Throws CalibError(kGimbalLock) when |R31| > 1 - 1e-9.
EulerYPR YprFromRot(const Rot3& r);

Rot3 RotFromAxisAngle(const AxisAngle& a);

// Canonical angle in [0, pi]; the pi case is resolved from the symmetric part.
AxisAngle AxisAngleFromRot(const Rot3& r);

Rot3 RotZ(double angle);

Pose3 Compose(const Pose3& a, const Pose3& b);
Pose3 Inverse(const Pose3& a);
Pose2 Compose(const Pose2& a, const Pose2& b);
Pose2 Inverse(const Pose2& a);

inline Pose3 operator*(const Pose3& a, const Pose3& b) { return Compose(a, b); }
inline Pose2 operator*(const Pose2& a, const Pose2& b) { return Compose(a, b); }

Eigen::Matrix3d Skew(const Eigen::Vector3d& v);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_GEOMETRY_H_
